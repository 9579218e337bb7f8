#pragma once

#include <string>
#include <string_view>

#include "moelab/group_spec.hpp"

namespace moelab {

/// Parses a group expression:
///
///   spec   := product
///   product:= power (" * " power)*            free product, left assoc
///   power  := atom ("^" INT)*                 direct power, binds tighter
///   atom   := "Z" INT                         cyclic group, INT >= 2
///            | "F" INT                        free group, INT >= 1
///            | "table:" PATH                  finite table loaded from JSON
///            | "freepow(" spec "," BIGINT ")" free product of BIGINT copies
///            | "(" spec ")"
///   BIGINT := decimal digits | BASE "^" EXP   (e.g. 1000 or 10^84)
///
/// Whitespace between tokens is ignored; PATH extends to the next
/// whitespace, ',' or ')'. Errors carry the failing input offset.
GroupSpecPtr parse_group_spec(std::string_view text);

/// Loads a finite multiplication table from a JSON document of the shape
///   { "elements": [labels...],
///     "table":    [row-major products, as labels or indices...],
///     "generators": [labels or indices...] }
/// and validates the group axioms.
GroupSpecPtr load_finite_table(const std::string& path);

}  // namespace moelab
