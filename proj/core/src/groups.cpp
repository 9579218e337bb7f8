#include "moelab/groups.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "moelab/errors.hpp"

namespace moelab {

namespace {

using Cyclic = GroupSpec::Cyclic;
using FiniteTable = GroupSpec::FiniteTable;
using Free = GroupSpec::Free;
using FreeProduct = GroupSpec::FreeProduct;
using DirectPower = GroupSpec::DirectPower;

Element mul_unchecked(const GroupSpec& g, const Element& a, const Element& b);
Element inv_unchecked(const GroupSpec& g, const Element& x);

bool is_identity_unchecked(const GroupSpec& g, const Element& x) {
  if (g.is<Cyclic>()) return x.scalar_value() == 0;
  if (g.is<FiniteTable>()) return x.scalar_value() == g.as<FiniteTable>().identity_index;
  if (g.is<Free>()) return x.word_letters().empty();
  if (g.is<FreeProduct>()) return x.syllable_seq().empty();
  const auto& dp = g.as<DirectPower>();
  for (const auto& c : x.tuple_coords())
    if (!is_identity_unchecked(*dp.base, c)) return false;
  return true;
}

Element mul_unchecked(const GroupSpec& g, const Element& a, const Element& b) {
  if (g.is<Cyclic>()) {
    const auto n = g.as<Cyclic>().modulus;
    return Element::scalar((a.scalar_value() + b.scalar_value()) % n);
  }
  if (g.is<FiniteTable>()) {
    const auto& t = g.as<FiniteTable>();
    const auto n = t.labels.size();
    return Element::scalar(t.table[a.scalar_value() * n + b.scalar_value()]);
  }
  if (g.is<Free>()) {
    Element::Word out = a.word_letters();
    for (auto letter : b.word_letters()) {
      if (!out.empty() && out.back() == -letter)
        out.pop_back();
      else
        out.push_back(letter);
    }
    return Element::word(std::move(out));
  }
  if (g.is<FreeProduct>()) {
    const auto& fp = g.as<FreeProduct>();
    Element::SyllableSeq out = a.syllable_seq();
    for (const auto& syl : b.syllable_seq()) {
      if (!out.empty() && out.back().slot == syl.slot &&
          cmp(out.back().copy, syl.copy) == 0) {
        const auto& factor = *fp.factors[syl.slot].spec;
        Element prod = mul_unchecked(factor, out.back().value, syl.value);
        if (is_identity_unchecked(factor, prod))
          out.pop_back();
        else
          out.back().value = std::move(prod);
      } else {
        out.push_back(syl);
      }
    }
    return Element::syllables(std::move(out));
  }
  const auto& dp = g.as<DirectPower>();
  const auto& xs = a.tuple_coords();
  const auto& ys = b.tuple_coords();
  Element::Tuple out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    out.push_back(mul_unchecked(*dp.base, xs[i], ys[i]));
  return Element::tuple(std::move(out));
}

Element inv_unchecked(const GroupSpec& g, const Element& x) {
  if (g.is<Cyclic>()) {
    const auto n = g.as<Cyclic>().modulus;
    const auto v = x.scalar_value();
    return Element::scalar(v == 0 ? 0 : n - v);
  }
  if (g.is<FiniteTable>())
    return Element::scalar(g.as<FiniteTable>().inverses[x.scalar_value()]);
  if (g.is<Free>()) {
    const auto& w = x.word_letters();
    Element::Word out(w.rbegin(), w.rend());
    for (auto& letter : out) letter = -letter;
    return Element::word(std::move(out));
  }
  if (g.is<FreeProduct>()) {
    const auto& fp = g.as<FreeProduct>();
    const auto& s = x.syllable_seq();
    Element::SyllableSeq out(s.rbegin(), s.rend());
    for (auto& syl : out)
      syl.value = inv_unchecked(*fp.factors[syl.slot].spec, syl.value);
    return Element::syllables(std::move(out));
  }
  const auto& dp = g.as<DirectPower>();
  Element::Tuple out;
  out.reserve(x.tuple_coords().size());
  for (const auto& c : x.tuple_coords()) out.push_back(inv_unchecked(*dp.base, c));
  return Element::tuple(std::move(out));
}

}  // namespace

Element identity(const GroupSpec& group) {
  if (group.is<Cyclic>()) return Element::scalar(0);
  if (group.is<FiniteTable>())
    return Element::scalar(group.as<FiniteTable>().identity_index);
  if (group.is<Free>()) return Element::word({});
  if (group.is<FreeProduct>()) return Element::syllables({});
  const auto& dp = group.as<DirectPower>();
  return Element::tuple(Element::Tuple(dp.exponent, identity(*dp.base)));
}

void validate(const GroupSpec& group, const Element& x) {
  if (group.is<Cyclic>()) {
    if (x.scalar_value() >= group.as<Cyclic>().modulus)
      throw ValidationError("cyclic element out of range");
    return;
  }
  if (group.is<FiniteTable>()) {
    if (x.scalar_value() >= group.as<FiniteTable>().labels.size())
      throw ValidationError("table element index out of range");
    return;
  }
  if (group.is<Free>()) {
    const auto rank = group.as<Free>().rank;
    const auto& w = x.word_letters();
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto letter = w[i];
      if (letter == 0 || static_cast<std::uint64_t>(std::abs(letter)) > rank)
        throw ValidationError("free word letter out of range");
      if (i > 0 && w[i - 1] == -letter)
        throw ValidationError("free word is not reduced at position " + std::to_string(i));
    }
    return;
  }
  if (group.is<FreeProduct>()) {
    const auto& fp = group.as<FreeProduct>();
    const auto& s = x.syllable_seq();
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto& syl = s[i];
      if (syl.slot >= fp.factors.size())
        throw ValidationError("syllable factor slot out of range");
      const auto& factor = fp.factors[syl.slot];
      if (sgn(syl.copy) < 0 || cmp(syl.copy, factor.multiplicity) >= 0)
        throw ValidationError("syllable copy index out of range");
      validate(*factor.spec, syl.value);
      if (is_identity_unchecked(*factor.spec, syl.value))
        throw ValidationError("syllable carries the neutral element (word not reduced)");
      if (i > 0 && s[i - 1].slot == syl.slot && cmp(s[i - 1].copy, syl.copy) == 0)
        throw ValidationError("adjacent syllables in the same factor copy (word not reduced)");
    }
    return;
  }
  const auto& dp = group.as<DirectPower>();
  const auto& coords = x.tuple_coords();
  if (coords.size() != dp.exponent)
    throw ValidationError("tuple has " + std::to_string(coords.size()) +
                          " coordinates, expected " + std::to_string(dp.exponent));
  for (const auto& c : coords) validate(*dp.base, c);
}

Element multiply(const GroupSpec& group, const Element& a, const Element& b) {
  validate(group, a);
  validate(group, b);
  return mul_unchecked(group, a, b);
}

Element inverse(const GroupSpec& group, const Element& x) {
  validate(group, x);
  return inv_unchecked(group, x);
}

bool is_identity(const GroupSpec& group, const Element& x) {
  validate(group, x);
  return is_identity_unchecked(group, x);
}

std::vector<Element> generators(const GroupSpec& group, const Budget& budget) {
  const BigInt count = group.generator_count();
  if (!fits_u64(count) || to_u64(count) > budget.max_elements)
    throw BudgetError("generating set of size " + count.get_str() +
                      " exceeds the enumeration budget of " +
                      std::to_string(budget.max_elements));

  std::vector<Element> out;
  if (group.is<Cyclic>()) {
    out.push_back(Element::scalar(1));
  } else if (group.is<FiniteTable>()) {
    for (auto idx : group.as<FiniteTable>().generators) out.push_back(Element::scalar(idx));
  } else if (group.is<Free>()) {
    const auto rank = group.as<Free>().rank;
    for (std::uint64_t k = 1; k <= rank; ++k)
      out.push_back(Element::word({static_cast<std::int32_t>(k)}));
  } else if (group.is<FreeProduct>()) {
    const auto& fp = group.as<FreeProduct>();
    for (std::size_t slot = 0; slot < fp.factors.size(); ++slot) {
      const auto& factor = fp.factors[slot];
      const auto inner = generators(*factor.spec, budget);
      for (BigInt copy = 0; cmp(copy, factor.multiplicity) < 0; ++copy)
        for (const auto& s : inner)
          out.push_back(Element::syllables({Element::Syllable{slot, copy, s}}));
    }
  } else {
    const auto& dp = group.as<DirectPower>();
    const auto inner = generators(*dp.base, budget);
    const Element e = identity(*dp.base);
    for (std::uint32_t coord = 0; coord < dp.exponent; ++coord)
      for (const auto& s : inner) {
        Element::Tuple t(dp.exponent, e);
        t[coord] = s;
        out.push_back(Element::tuple(std::move(t)));
      }
  }
  return out;
}

namespace {

// Breadth-first expansion by right multiplication with `gens`. Layers are
// emitted in normal-form order, which fixes the basis order everywhere else.
// `target`, when set, stops the walk early and reports the depth at which the
// target appeared.
struct BfsResult {
  std::vector<Element> elements;       // concatenated layers, e first
  std::vector<std::size_t> layer_end;  // prefix sizes ([1, |B_1|, |B_2|, ...])
  bool saturated = false;              // no new elements before the radius cap
  std::optional<std::uint64_t> target_depth;
};

BfsResult bfs_expand(const GroupSpec& g, const std::vector<Element>& gens,
                     std::uint64_t radius, const Budget& budget,
                     const Element* target = nullptr) {
  BfsResult res;
  std::set<Element> seen;
  const Element e = identity(g);
  seen.insert(e);
  res.elements.push_back(e);
  res.layer_end.push_back(1);
  if (target && *target == e) {
    res.target_depth = 0;
    return res;
  }
  std::vector<Element> layer{e};
  for (std::uint64_t depth = 1; depth <= radius; ++depth) {
    std::set<Element> next;
    for (const auto& x : layer)
      for (const auto& s : gens) {
        Element y = mul_unchecked(g, x, s);
        if (!seen.count(y)) next.insert(std::move(y));
      }
    if (next.empty()) {
      res.saturated = true;
      break;
    }
    if (seen.size() + next.size() > budget.max_elements)
      throw BudgetError("ball of radius " + std::to_string(depth) + " exceeds the budget of " +
                        std::to_string(budget.max_elements) + " elements");
    layer.assign(next.begin(), next.end());
    for (const auto& y : layer) {
      seen.insert(y);
      res.elements.push_back(y);
    }
    res.layer_end.push_back(res.elements.size());
    if (target && next.count(*target)) {
      res.target_depth = depth;
      return res;
    }
  }
  return res;
}

std::vector<Element> symmetrized_generators(const GroupSpec& g,
                                            const std::vector<Element>& gens) {
  std::set<Element> sym(gens.begin(), gens.end());
  for (const auto& s : gens) sym.insert(inv_unchecked(g, s));
  return {sym.begin(), sym.end()};
}

}  // namespace

WordLength word_length(const GroupSpec& group, const Element& x, std::uint64_t cutoff,
                       const Budget& budget) {
  validate(group, x);
  if (group.is<Cyclic>()) {
    // The only generator is 1, so the residue itself is the minimal count.
    return {WordLength::Kind::Finite, x.scalar_value()};
  }
  if (group.is<FiniteTable>()) {
    const auto gens = generators(group, budget);
    const auto res = bfs_expand(group, gens, cutoff, budget, &x);
    if (res.target_depth) return {WordLength::Kind::Finite, *res.target_depth};
    return {WordLength::Kind::ExceedsCutoff, cutoff};
  }
  if (group.is<Free>()) {
    // Positive products never cancel, so the reduced word of a positive
    // product consists of positive letters. A negative letter therefore
    // proves the element is not a positive word at all.
    const auto& w = x.word_letters();
    for (auto letter : w)
      if (letter < 0) return {WordLength::Kind::Infinite, cutoff};
    return {WordLength::Kind::Finite, w.size()};
  }
  if (group.is<FreeProduct>()) {
    // Maximal runs of letters from one factor copy produce exactly one
    // syllable, so lengths add syllable by syllable.
    const auto& fp = group.as<FreeProduct>();
    std::uint64_t total = 0;
    for (const auto& syl : x.syllable_seq()) {
      const auto part = word_length(*fp.factors[syl.slot].spec, syl.value, cutoff, budget);
      if (part.kind != WordLength::Kind::Finite) return {part.kind, cutoff};
      total += part.value;
    }
    return {WordLength::Kind::Finite, total};
  }
  // Direct power: letters touching different coordinates commute, so the
  // coordinates are filled independently and lengths add.
  const auto& dp = group.as<DirectPower>();
  std::uint64_t total = 0;
  for (const auto& c : x.tuple_coords()) {
    const auto part = word_length(*dp.base, c, cutoff, budget);
    if (part.kind != WordLength::Kind::Finite) return {part.kind, cutoff};
    total += part.value;
  }
  return {WordLength::Kind::Finite, total};
}

std::vector<Element> ball(const GroupSpec& group, std::uint32_t radius, const Budget& budget) {
  const auto gens = generators(group, budget);
  return bfs_expand(group, gens, radius, budget).elements;
}

std::vector<Element> symmetric_ball(const GroupSpec& group, std::uint32_t radius,
                                    const Budget& budget) {
  const auto gens = symmetrized_generators(group, generators(group, budget));
  return bfs_expand(group, gens, radius, budget).elements;
}

std::vector<Element> all_elements(const GroupSpec& group, const Budget& budget) {
  if (!group.is_finite())
    throw UnsupportedError("cannot enumerate an infinite group: " + group.to_string());
  const auto gens = generators(group, budget);
  // Positive products reach every element of a finite group, so expanding
  // until saturation (never beyond the budget) enumerates it.
  const auto res =
      bfs_expand(group, gens, std::numeric_limits<std::uint64_t>::max(), budget);
  return res.elements;
}

std::vector<Element::Syllable> reduced_decomposition(const GroupSpec& group,
                                                     const Element& x) {
  if (!group.is<FreeProduct>())
    throw UnsupportedError("reduced decomposition is defined on free products only");
  validate(group, x);
  return x.syllable_seq();
}

ElementOrder element_order(const GroupSpec& group, const Element& x, std::uint64_t cutoff) {
  validate(group, x);
  Element acc = x;
  std::uint64_t k = 1;
  while (!is_identity_unchecked(group, acc)) {
    if (k >= cutoff) return {true, cutoff};
    acc = mul_unchecked(group, acc, x);
    ++k;
  }
  return {false, k};
}

std::size_t nonidentity_coordinate_count(const GroupSpec& group, const Element& x) {
  if (!group.is<DirectPower>())
    throw UnsupportedError("coordinate count is defined on direct powers only");
  validate(group, x);
  const auto& dp = group.as<DirectPower>();
  std::size_t count = 0;
  for (const auto& c : x.tuple_coords())
    if (!is_identity_unchecked(*dp.base, c)) ++count;
  return count;
}

}  // namespace moelab
