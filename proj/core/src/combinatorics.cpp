#include "moelab/combinatorics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "moelab/errors.hpp"
#include "moelab/groups.hpp"

namespace moelab {

namespace {

using Free = GroupSpec::Free;
using FreeProduct = GroupSpec::FreeProduct;

bool generators_enumerable(const GroupSpec& g, const Budget& budget) {
  const BigInt count = g.generator_count();
  return fits_u64(count) && to_u64(count) <= budget.max_elements;
}

PairMultiplicityReport pair_multiplicity_enumerated(const GroupSpec& g,
                                                    const Budget& budget) {
  const auto gens = generators(g, budget);
  std::map<Element, std::vector<std::pair<Element, Element>>> quotients;
  for (const auto& s : gens) {
    const Element s_inv = inverse(g, s);
    for (const auto& t : gens) {
      Element q = multiply(g, s_inv, t);
      if (is_identity(g, q)) continue;
      quotients[std::move(q)].push_back({s, t});
    }
  }
  PairMultiplicityReport rep;
  if (quotients.empty()) {
    rep.degenerate = true;
    return rep;
  }
  rep.value = 0;
  for (const auto& [q, pairs] : quotients) {
    if (pairs.size() > rep.value) {
      rep.value = pairs.size();
      rep.witness = q;
      rep.witness_pairs = pairs;
    }
  }
  return rep;
}

// Embeds an element of factor `slot` as a one-syllable free-product element.
Element embed_syllable(std::size_t slot, BigInt copy, const Element& value) {
  return Element::syllables({Element::Syllable{slot, std::move(copy), value}});
}

}  // namespace

PairMultiplicityReport pair_multiplicity(const GroupSpec& group, const Budget& budget) {
  if (group.is<Free>()) {
    // Reduced quotients a_i^{-1} a_j are pairwise distinct, so every
    // non-neutral quotient arises exactly once; rank one leaves no
    // non-neutral quotient at all.
    const auto rank = group.as<Free>().rank;
    PairMultiplicityReport rep;
    if (rank == 1) {
      rep.degenerate = true;
      return rep;
    }
    rep.value = 1;
    rep.witness = Element::word({-1, 2});
    rep.witness_pairs = {{Element::word({1}), Element::word({2})}};
    return rep;
  }
  if (group.is<FreeProduct>() && !generators_enumerable(group, budget))
    return pair_multiplicity_free_product(group.as<FreeProduct>().factors, budget);
  return pair_multiplicity_enumerated(group, budget);
}

PairMultiplicityReport pair_multiplicity_free_product(
    const std::vector<GroupSpec::Factor>& factors, const Budget& budget) {
  if (factors.empty()) throw ValidationError("free product needs at least one factor");

  // Quotients s^{-1} t with s, t in different copies are two-syllable words
  // determined uniquely by (s, t), so only within-copy quotients can repeat:
  // the statistic is the maximum over the distinct factors.
  PairMultiplicityReport best;
  bool have_best = false;
  std::vector<const GroupSpec*> visited;
  for (std::size_t slot = 0; slot < factors.size(); ++slot) {
    const auto& f = factors[slot];
    const bool dup = std::any_of(visited.begin(), visited.end(),
                                 [&](const GroupSpec* s) { return s->equals(*f.spec); });
    if (dup) continue;
    visited.push_back(f.spec.get());

    PairMultiplicityReport part = pair_multiplicity(*f.spec, budget);
    if (part.degenerate) continue;
    if (!have_best || part.value > best.value) {
      have_best = true;
      best.value = part.value;
      best.witness = embed_syllable(slot, 0, *part.witness);
      best.witness_pairs.clear();
      for (const auto& [s, t] : part.witness_pairs)
        best.witness_pairs.push_back(
            {embed_syllable(slot, 0, s), embed_syllable(slot, 0, t)});
    }
  }
  if (have_best) return best;

  // Every factor alone is degenerate (one generator of order <= 2). A second
  // copy or factor still yields cross quotients, each from exactly one pair;
  // a single copy of a single such factor leaves the product degenerate.
  const auto& f0 = factors[0];
  if (factors.size() == 1 && cmp(f0.multiplicity, 1) == 0) {
    PairMultiplicityReport rep;
    rep.degenerate = true;
    return rep;
  }
  const Element s0 = generators(*f0.spec, budget).at(0);
  Element u = embed_syllable(0, 0, s0);
  Element v = cmp(f0.multiplicity, 2) >= 0
                  ? embed_syllable(0, 1, s0)
                  : embed_syllable(1, 0, generators(*factors[1].spec, budget).at(0));
  Element::SyllableSeq q{Element::Syllable{0, 0, inverse(*f0.spec, s0)},
                         v.syllable_seq().front()};
  PairMultiplicityReport rep;
  rep.value = 1;
  rep.witness = Element::syllables(std::move(q));
  rep.witness_pairs = {{std::move(u), std::move(v)}};
  return rep;
}

GirthResult girth(const GroupSpec& group, std::uint64_t cutoff, const Budget& budget) {
  // Structural cases first; they also cover generating sets too large to
  // enumerate (symbolic copy counts, huge free ranks).
  if (group.is<GroupSpec::Free>()) {
    // The Cayley graph of a free group on free generators is a tree.
    return {true, 0, false};
  }
  if (group.is<GroupSpec::FreeProduct>()) {
    // A reduced word over a free product is neutral only when it collapses
    // inside single factor copies, so every cycle lives in an embedded
    // factor: the girth is the minimum over distinct factors.
    GirthResult out{true, 0, false};
    std::vector<const GroupSpec*> seen;
    for (const auto& fac : group.as<GroupSpec::FreeProduct>().factors) {
      const bool dup = std::any_of(seen.begin(), seen.end(), [&](const GroupSpec* s) {
        return s->equals(*fac.spec);
      });
      if (dup) continue;
      seen.push_back(fac.spec.get());
      const GirthResult inner = girth(*fac.spec, cutoff, budget);
      if (inner.exceeded) continue;
      if (out.exceeded || inner.value < out.value) out = inner;
    }
    return out;
  }
  if (group.is<GroupSpec::DirectPower>()) {
    const auto& power = group.as<GroupSpec::DirectPower>();
    const GirthResult base = girth(*power.base, cutoff, budget);
    if (power.exponent < 2) return base;
    // Generators in different coordinates commute, closing a 4-cycle.
    if (!base.exceeded && base.value <= 4) return base;
    return {4 > cutoff, 4, false};
  }

  const auto gens = generators(group, budget);
  const Element e = identity(group);

  // Parallel edges degrade the girth to 2: either some generator is an
  // involution (its two arrows coincide as an undirected double edge) or S
  // contains an inverse pair.
  std::set<Element> gen_set(gens.begin(), gens.end());
  for (const auto& s : gens) {
    const Element s_inv = inverse(group, s);
    if (s_inv == s) return {false, 2, true};
    if (gen_set.count(s_inv)) return {false, 2, true};
  }

  std::vector<Element> nbr_gens;
  {
    std::set<Element> sym(gens.begin(), gens.end());
    for (const auto& s : gens) sym.insert(inverse(group, s));
    nbr_gens.assign(sym.begin(), sym.end());
  }

  std::map<Element, std::uint64_t> dist;
  std::map<Element, Element> parent;
  dist[e] = 0;
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  std::vector<Element> layer{e};
  std::uint64_t depth = 0;
  // A shortest cycle through the root closes along an edge whose endpoints
  // sit at depth <= girth/2, and by vertex transitivity the through-root
  // girth is the girth; walking until 2*depth >= best settles it.
  while (!layer.empty()) {
    if (2 * depth >= best || depth > cutoff / 2 + 1) break;
    std::vector<Element> next;
    for (const auto& x : layer) {
      const auto dx = dist.at(x);
      const Element* px = nullptr;
      if (auto it = parent.find(x); it != parent.end()) px = &it->second;
      for (const auto& s : nbr_gens) {
        Element y = multiply(group, x, s);
        if (auto it = dist.find(y); it != dist.end()) {
          if (px && y == *px) continue;  // the unique tree edge back up
          best = std::min(best, dx + it->second + 1);
        } else {
          if (dist.size() >= budget.max_elements)
            throw BudgetError("girth walk exceeds the budget of " +
                              std::to_string(budget.max_elements) + " vertices");
          dist.emplace(y, dx + 1);
          parent.emplace(y, x);
          next.push_back(std::move(y));
        }
      }
    }
    layer = std::move(next);
    ++depth;
  }
  if (best <= cutoff) return {false, best, false};
  return {true, cutoff, false};
}

bool is_minimal_generating_set(const GroupSpec& group, const Budget& budget) {
  if (group.is<Free>()) return true;  // free generators are a basis
  if (group.is<FreeProduct>()) {
    // Ranks add across free-product factors, so the union of the copies'
    // sets is minimal exactly when every factor's set is.
    for (const auto& f : group.as<FreeProduct>().factors)
      if (!is_minimal_generating_set(*f.spec, budget)) return false;
    return true;
  }
  if (cmp(group.generator_count(), 1) == 0) return true;  // nontrivial group

  if (!group.is_finite())
    throw UnsupportedError("minimality search needs a finite group, got " +
                           group.to_string());
  const BigInt order = group.size();
  if (!fits_u64(order) || to_u64(order) > 512)
    throw BudgetError("minimality search is limited to groups of order <= 512");

  const auto elements = all_elements(group, budget);
  const std::size_t n = elements.size();
  const std::size_t target = generators(group, budget).size();

  // Index-based closure test: positive products saturate subgroups of a
  // finite group, so a subset generates iff its closure has size n.
  std::map<Element, std::uint32_t> index;
  for (std::uint32_t i = 0; i < n; ++i) index[elements[i]] = i;
  std::vector<std::vector<std::uint32_t>> mul(n, std::vector<std::uint32_t>(n));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      mul[i][j] = index.at(multiply(group, elements[i], elements[j]));
  const std::uint32_t id = index.at(identity(group));

  auto generates = [&](const std::vector<std::uint32_t>& subset) {
    std::vector<char> seen(n, 0);
    seen[id] = 1;
    std::size_t covered = 1;
    std::vector<std::uint32_t> frontier{id};
    while (!frontier.empty()) {
      std::vector<std::uint32_t> fresh;
      for (auto x : frontier)
        for (auto s : subset) {
          const auto y = mul[x][s];
          if (!seen[y]) {
            seen[y] = 1;
            ++covered;
            fresh.push_back(y);
          }
        }
      frontier = std::move(fresh);
    }
    return covered == n;
  };

  std::vector<std::uint32_t> candidates;
  for (std::uint32_t i = 0; i < n; ++i)
    if (i != id) candidates.push_back(i);

  // All subsets of the group's elements of every size below |S|.
  for (std::size_t k = 1; k < target && k <= candidates.size(); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::vector<std::uint32_t> pick(k);
    std::uint64_t tested = 0;
    while (true) {
      for (std::size_t i = 0; i < k; ++i) pick[i] = candidates[idx[i]];
      if (generates(pick)) return false;
      if (++tested > 5'000'000)
        throw BudgetError("minimality subset search is too large");
      // Advance the combination (idx strictly increasing over candidates).
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == i - 1 + candidates.size() - k) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return true;
}

bool ball2_has_involution(const GroupSpec& group, const Budget& budget) {
  for (const auto& x : ball(group, 2, budget)) {
    if (is_identity(group, x)) continue;
    if (is_identity(group, multiply(group, x, x))) return true;
  }
  return false;
}

}  // namespace moelab
