#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "moelab/group_spec.hpp"

namespace moelab {

/// Neutral element of the group.
Element identity(const GroupSpec& group);

/// Membership / well-formedness check; throws ValidationError with a
/// description of the offending part.
void validate(const GroupSpec& group, const Element& x);

/// Group operation on validated elements (normal forms in, normal form out).
Element multiply(const GroupSpec& group, const Element& a, const Element& b);

Element inverse(const GroupSpec& group, const Element& x);

bool is_identity(const GroupSpec& group, const Element& x);

/// The distinguished generating set, in canonical order. Throws BudgetError
/// when the set is symbolic (e.g. freepow with 10^84 copies).
std::vector<Element> generators(const GroupSpec& group, const Budget& budget = {});

/// Length of x as a positive word in the generators (inverses do not count
/// as letters). Infinite groups can have elements with no positive
/// expression at all; those report Kind::Infinite when that is provable
/// structurally (free groups and their products). Where the length is only
/// obtainable by search (explicit tables), the search is capped by `cutoff`
/// and may report ExceedsCutoff instead.
struct WordLength {
  enum class Kind { Finite, Infinite, ExceedsCutoff } kind = Kind::Finite;
  std::uint64_t value = 0;  // length when Finite, cutoff otherwise

  bool finite() const noexcept { return kind == Kind::Finite; }
};
WordLength word_length(const GroupSpec& group, const Element& x,
                       std::uint64_t cutoff = 64, const Budget& budget = {});

/// Elements of positive word length <= radius, ordered by breadth-first
/// layer and, inside a layer, by normal form. ball(G,0) = {e}.
std::vector<Element> ball(const GroupSpec& group, std::uint32_t radius,
                          const Budget& budget = {});

/// Same, but over the symmetrized generating set S ∪ S^{-1}.
std::vector<Element> symmetric_ball(const GroupSpec& group, std::uint32_t radius,
                                    const Budget& budget = {});

/// Every element reachable from the generators; defined for finite groups
/// only (positive products saturate to the whole group there).
std::vector<Element> all_elements(const GroupSpec& group, const Budget& budget = {});

/// Free-product normal form of x as an explicit syllable list; the empty
/// list is the neutral element. Only defined on free-product specs.
std::vector<Element::Syllable> reduced_decomposition(const GroupSpec& group,
                                                     const Element& x);

/// Order of x in the group, capped.
struct ElementOrder {
  bool exceeded = false;  // true when the cap was hit without returning to e
  std::uint64_t value = 0;
};
ElementOrder element_order(const GroupSpec& group, const Element& x,
                           std::uint64_t cutoff = 1024);

/// Number of non-neutral coordinates of a direct-power element.
std::size_t nonidentity_coordinate_count(const GroupSpec& group, const Element& x);

}  // namespace moelab
