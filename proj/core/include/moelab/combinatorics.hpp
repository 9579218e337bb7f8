#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "moelab/group_spec.hpp"

namespace moelab {

/// Collision statistic of the generating set S: the largest number of pairs
/// (s,t) in S x S with s^{-1} t equal to one fixed non-neutral element.
/// When no pair produces a non-neutral quotient at all (|S| = 1 with s of
/// order <= 2 is the only way), the statistic is degenerate and reported
/// with the conventional value 1.
struct PairMultiplicityReport {
  std::uint64_t value = 1;
  bool degenerate = false;
  std::optional<Element> witness;  // a quotient attaining the maximum
  std::vector<std::pair<Element, Element>> witness_pairs;
};

/// Exhaustive computation over S x S. Structural shortcuts cover the
/// symbolic cases (free groups of huge rank, free products with huge copy
/// counts) where S cannot be enumerated.
PairMultiplicityReport pair_multiplicity(const GroupSpec& group, const Budget& budget = {});

/// Free-product route: the statistic of a free product equals the maximum
/// over its factors (cross-factor and cross-copy quotients are uniquely
/// produced). Works for symbolic copy counts. Witnesses are embedded into
/// copy 0 of the attaining factor.
PairMultiplicityReport pair_multiplicity_free_product(
    const std::vector<GroupSpec::Factor>& factors, const Budget& budget = {});

/// Girth of the (right) Cayley graph over S union S^{-1}, computed by a
/// breadth-first walk from the neutral element (exact by vertex
/// transitivity). Free groups (trees), free products (minimum over factors)
/// and direct powers (commuting coordinates close 4-cycles) are resolved
/// structurally, which keeps symbolic generating sets in reach. Generators
/// of order two and inverse pairs inside S create parallel edges; those
/// Cayley graphs are reported as girth 2, degenerate.
struct GirthResult {
  bool exceeded = false;  // true: every cycle is longer than the cutoff
  std::uint64_t value = 0;
  bool degenerate = false;  // parallel edges (order-2 generator or s^{-1} in S)
};
GirthResult girth(const GroupSpec& group, std::uint64_t cutoff = 32,
                  const Budget& budget = {});

/// True when no strictly smaller subset of the group generates it.
/// Structural for free groups and free products (ranks add); exhaustive
/// subset search over the elements for finite groups (|G| <= 512).
bool is_minimal_generating_set(const GroupSpec& group, const Budget& budget = {});

/// True when the ball of radius 2 contains an element of order exactly 2.
bool ball2_has_involution(const GroupSpec& group, const Budget& budget = {});

}  // namespace moelab
