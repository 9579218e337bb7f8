#include "moelab/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "moelab/errors.hpp"
#include "moelab/groups.hpp"

namespace moelab {

namespace {

using Cyclic = GroupSpec::Cyclic;
using FiniteTable = GroupSpec::FiniteTable;
using Free = GroupSpec::Free;
using FreeProduct = GroupSpec::FreeProduct;
using DirectPower = GroupSpec::DirectPower;

constexpr double kDropEpsilon = 0.0;  // support keeps every nonzero exactly

std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// AlgebraElement

AlgebraElement::AlgebraElement(GroupSpecPtr group) : group_(std::move(group)) {
  if (!group_) throw ValidationError("algebra element needs a group");
}

AlgebraElement AlgebraElement::delta(GroupSpecPtr group, const Element& at,
                                     Coefficient amplitude) {
  AlgebraElement f(std::move(group));
  f.add_term(at, amplitude);
  return f;
}

void AlgebraElement::add_term(const Element& at, Coefficient amplitude) {
  validate(*group_, at);
  auto [it, inserted] = values_.try_emplace(at, amplitude);
  if (!inserted) {
    it->second += amplitude;
    if (std::abs(it->second) <= kDropEpsilon) values_.erase(it);
  } else if (std::abs(amplitude) <= kDropEpsilon) {
    values_.erase(it);
  }
}

AlgebraElement::Coefficient AlgebraElement::at(const Element& x) const {
  const auto it = values_.find(x);
  return it == values_.end() ? Coefficient{0.0} : it->second;
}

double AlgebraElement::l2_norm() const {
  double sum = 0;
  for (const auto& [g, c] : values_) sum += std::norm(c);
  return std::sqrt(sum);
}

AlgebraElement AlgebraElement::adjoint() const {
  AlgebraElement out(group_);
  for (const auto& [g, c] : values_)
    out.add_term(inverse(*group_, g), std::conj(c));
  return out;
}

AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& h) {
  if (!f.group()->equals(*h.group()))
    throw ValidationError("convolution of elements over different groups");
  const auto& g = *f.group();
  if (f.support_size() * h.support_size() > 20'000'000)
    throw BudgetError("convolution support product too large");
  AlgebraElement out(f.group());
  for (const auto& [a, ca] : f.support())
    for (const auto& [b, cb] : h.support()) out.add_term(multiply(g, a, b), ca * cb);
  return out;
}

// ---------------------------------------------------------------------------
// Norm engines

double dense_spectral_norm(const Eigen::MatrixXcd& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const Eigen::MatrixXcd gram = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw DomainError("eigenvalue computation failed");
  const double top = solver.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

double power_iteration_norm(const Eigen::MatrixXcd& a, double tol,
                            std::uint32_t max_iter) {
  const auto n = a.cols();
  if (n == 0) return 0.0;
  const Eigen::MatrixXcd gram = a.adjoint() * a;

  std::vector<Eigen::VectorXcd> starts;
  starts.push_back(Eigen::VectorXcd::Ones(n));
  {
    Eigen::VectorXcd ramp(n);
    for (Eigen::Index i = 0; i < n; ++i) ramp[i] = std::complex<double>(1.0 + double(i), 0.0);
    starts.push_back(ramp);
  }
  {
    // Fixed-seed start so repeated runs agree bit for bit.
    std::mt19937_64 rng(0x9E3779B97F4A7C15ull);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXcd r(n);
    for (Eigen::Index i = 0; i < n; ++i) r[i] = std::complex<double>(u(rng), u(rng));
    starts.push_back(r);
  }

  double best = 0.0;
  for (auto& v0 : starts) {
    const double norm0 = v0.norm();
    if (norm0 == 0.0) continue;
    Eigen::VectorXcd v = v0 / norm0;
    double prev = 0.0;
    for (std::uint32_t it = 0; it < max_iter; ++it) {
      const Eigen::VectorXcd w = gram * v;
      // Rayleigh quotient of the Gram matrix: always <= sigma_max^2.
      const double r = std::max(0.0, v.dot(w).real());
      best = std::max(best, std::sqrt(r));
      const double wn = w.norm();
      if (wn == 0.0) break;
      v = w / wn;
      if (std::abs(r - prev) <= tol * std::max(1.0, r)) break;
      prev = r;
    }
  }
  return best;
}

Compression compression(const GroupSpec& group, const AlgebraElement& f,
                        std::uint32_t radius, const Budget& budget) {
  if (!f.group()->equals(group))
    throw ValidationError("compression: function lives on a different group");
  Compression out;
  out.basis = group.is_finite() ? all_elements(group, budget) : ball(group, radius, budget);
  const auto n = static_cast<Eigen::Index>(out.basis.size());
  std::vector<Element> inv(out.basis.size());
  for (std::size_t j = 0; j < out.basis.size(); ++j)
    inv[j] = inverse(group, out.basis[j]);
  out.matrix = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out.matrix(i, j) = f.at(multiply(group, out.basis[i], inv[j]));
  return out;
}

double moment_lower_bound(const AlgebraElement& f, const Budget& budget) {
  if (f.support_size() == 0) return 0.0;
  const Element e = identity(*f.group());
  AlgebraElement cur = convolve(f.adjoint(), f);
  double best = 0.0;
  std::uint64_t n = 1;  // cur = (f~ * f)^{* n}
  for (int round = 0; round < 8; ++round) {
    const double val = cur.at(e).real();
    if (val > 0.0) best = std::max(best, std::pow(val, 1.0 / double(2 * n)));
    if (cur.support_size() > std::min<std::size_t>(budget.max_elements, 1400)) break;
    cur = convolve(cur, cur);
    n *= 2;
  }
  return best;
}

double ball2_norm_constant(const GroupSpec& group, const Budget& budget) {
  if (group.is_finite())
    return std::sqrt(static_cast<double>(ball(group, 2, budget).size()));
  if (group.is<Free>()) {
    const double r = static_cast<double>(group.as<Free>().rank);
    return std::sqrt(std::min(14.0, 1.0 + r + r * r));
  }
  if (group.is<FreeProduct>()) {
    double pmax = 0.0;
    std::vector<const GroupSpec*> visited;
    for (const auto& fac : group.as<FreeProduct>().factors) {
      const bool dup = std::any_of(visited.begin(), visited.end(), [&](const GroupSpec* s) {
        return s->equals(*fac.spec);
      });
      if (dup) continue;
      visited.push_back(fac.spec.get());
      pmax = std::max(pmax, ball2_norm_constant(*fac.spec, budget));
    }
    return 5.0 * std::sqrt(2.0) * pmax;
  }
  const auto& dp = group.as<DirectPower>();
  const double p = ball2_norm_constant(*dp.base, budget);
  double sum = 0.0;
  for (std::uint32_t m = 0; m <= 2 && m <= dp.exponent; ++m)
    sum += static_cast<double>(binomial_u64(dp.exponent, m)) * std::pow(p, 2.0 * m);
  return std::sqrt(sum);
}

NormBound operator_norm(const GroupSpec& group, const AlgebraElement& f,
                        const NormOptions& options, const Budget& budget) {
  if (!f.group()->equals(group))
    throw ValidationError("operator_norm: function lives on a different group");
  NormBound out;
  if (f.support_size() == 0) {
    out.lower_method = out.upper_method = "empty_support";
    return out;
  }

  if (group.is_finite()) {
    const auto comp = compression(group, f, 0, budget);
    const double exact = dense_spectral_norm(comp.matrix);
    return {exact, exact, "exact_regular_representation", "exact_regular_representation"};
  }

  const auto comp = compression(group, f, options.radius, budget);
  const double from_window =
      comp.basis.size() <= 320
          ? dense_spectral_norm(comp.matrix)
          : power_iteration_norm(comp.matrix, options.tol, options.max_iter);
  const double from_moments = moment_lower_bound(f, budget);
  if (from_window >= from_moments) {
    out.lower = from_window;
    out.lower_method = "compression_spectrum(radius=" + std::to_string(options.radius) + ")";
  } else {
    out.lower = from_moments;
    out.lower_method = "return_moments";
  }

  const double l2 = f.l2_norm();
  double upper = std::sqrt(static_cast<double>(f.support_size())) * l2;
  std::string upper_method = "cauchy_schwarz";
  if (group.is<Free>()) {
    // Length-layer decomposition: a layer at reduced length m contributes at
    // most (m+1) times its l^2 mass.
    std::map<std::size_t, double> layer_mass;
    for (const auto& [g, c] : f.support())
      layer_mass[g.word_letters().size()] += std::norm(c);
    double sum = 0.0;
    for (const auto& [m, mass] : layer_mass)
      sum += (static_cast<double>(m) + 1.0) * std::sqrt(mass);
    if (sum < upper) {
      upper = sum;
      upper_method = "length_layer_decomposition";
    }
  } else {
    // Registered ball-2 constants apply whenever the support sits inside the
    // positive ball of radius 2.
    bool inside = true;
    std::set<Element> b2;
    try {
      const auto b = ball(group, 2, budget);
      b2.insert(b.begin(), b.end());
    } catch (const BudgetError&) {
      inside = false;
    }
    if (inside)
      for (const auto& [g, c] : f.support())
        if (!b2.count(g)) {
          inside = false;
          break;
        }
    if (inside) {
      const double c2 = ball2_norm_constant(group, budget) * l2;
      if (c2 < upper) {
        upper = c2;
        upper_method = "ball2_registered_constant";
      }
    }
  }
  out.upper = upper;
  out.upper_method = upper_method;
  return out;
}

// ---------------------------------------------------------------------------
// Sampled inequality verification

namespace {

struct RatioAccumulator {
  double bound = 0.0;
  double tol = 1e-9;
  double max_ratio = 0.0;
  std::uint64_t total = 0;
  std::vector<SampleWitness> all;

  void feed(const std::string& kind, double norm, double l2) {
    if (l2 < 1e-12) return;
    SampleWitness w;
    w.index = total++;
    w.kind = kind;
    w.l2 = l2;
    w.norm = norm;
    w.ratio = norm / l2;
    max_ratio = std::max(max_ratio, w.ratio);
    all.push_back(std::move(w));
  }

  void finish(VerificationReport& rep) {
    rep.total_samples = total;
    rep.max_ratio = max_ratio;
    rep.bound = bound;
    rep.margin = bound - max_ratio;
    rep.tol = tol;
    rep.pass = max_ratio <= bound + tol;
    std::sort(all.begin(), all.end(),
              [](const SampleWitness& a, const SampleWitness& b) { return a.ratio > b.ratio; });
    if (all.size() > 3) all.resize(3);
    rep.witnesses = std::move(all);
  }
};

// Streams the standard sample battery: the uniform vector, every coordinate
// delta, a few sign patterns, then `trials` complex Gaussian draws.
template <class Fn>
void stream_samples(std::size_t dim, std::uint64_t trials, std::uint64_t seed, Fn&& fn) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  fn("uniform", Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(dim)).eval());
  for (std::size_t k = 0; k < dim; ++k) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    c[static_cast<Eigen::Index>(k)] = 1.0;
    fn("delta", c);
  }
  for (int s = 0; s < 4; ++s) {
    Eigen::VectorXcd c(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < c.size(); ++i)
      c[i] = (rng() & 1) ? 1.0 : -1.0;
    fn("signs", c);
  }
  for (std::uint64_t t = 0; t < trials; ++t) {
    Eigen::VectorXcd c(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < c.size(); ++i)
      c[i] = std::complex<double>(normal(rng), normal(rng));
    fn("gaussian", c);
  }
}

}  // namespace

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json witness_list = nlohmann::json::array();
  for (const auto& w : witnesses)
    witness_list.push_back({{"sample", w.index},
                            {"kind", w.kind},
                            {"ratio", w.ratio},
                            {"norm", w.norm},
                            {"l2", w.l2}});
  return {{"lemma", lemma},
          {"group_spec", group_display},
          {"params", params},
          {"trials", trials},
          {"total_samples", total_samples},
          {"seed", seed},
          {"max_ratio", max_ratio},
          {"bound", bound},
          {"margin", margin},
          {"tol", tol},
          {"exact_norms", exact_norms},
          {"pass", pass},
          {"witnesses", witness_list}};
}

VerificationReport verify_product_inequality(GroupSpecPtr g, GroupSpecPtr h,
                                             const std::vector<Element>& window_g,
                                             const std::vector<Element>& window_h,
                                             std::uint64_t trials, std::uint64_t seed,
                                             double tol, const Budget& budget) {
  if (!g || !h) throw ValidationError("product inequality needs two groups");
  if (!g->is_finite() || !h->is_finite())
    throw UnsupportedError("product inequality uses exact norms; both groups must be finite");
  if (window_g.empty() || window_h.empty())
    throw ValidationError("empty support window");
  for (const auto& x : window_g) validate(*g, x);
  for (const auto& x : window_h) validate(*h, x);

  const auto eg = all_elements(*g, budget);
  const auto eh = all_elements(*h, budget);
  const std::size_t ng = eg.size(), nh = eh.size();
  const std::size_t dim_total = ng * nh;
  if (dim_total > 2048)
    throw BudgetError("product regular representation too large: " + std::to_string(dim_total));

  std::map<Element, std::size_t> ig, ih;
  for (std::size_t i = 0; i < ng; ++i) ig[eg[i]] = i;
  for (std::size_t i = 0; i < nh; ++i) ih[eh[i]] = i;

  // Left-translation tables for the support entries.
  std::vector<std::vector<std::size_t>> permg(window_g.size(), std::vector<std::size_t>(ng));
  for (std::size_t s = 0; s < window_g.size(); ++s)
    for (std::size_t y = 0; y < ng; ++y)
      permg[s][y] = ig.at(multiply(*g, window_g[s], eg[y]));
  std::vector<std::vector<std::size_t>> permh(window_h.size(), std::vector<std::size_t>(nh));
  for (std::size_t t = 0; t < window_h.size(); ++t)
    for (std::size_t y = 0; y < nh; ++y)
      permh[t][y] = ih.at(multiply(*h, window_h[t], eh[y]));

  const double p = std::sqrt(static_cast<double>(window_g.size()));
  const double q = std::sqrt(static_cast<double>(window_h.size()));

  VerificationReport rep;
  rep.lemma = "product";
  rep.group_display = g->to_string() + " x " + h->to_string();
  rep.params = {{"G", g->to_string()},
                {"H", h->to_string()},
                {"window_g_size", window_g.size()},
                {"window_h_size", window_h.size()},
                {"p", p},
                {"q", q},
                {"dimension", dim_total}};
  rep.trials = trials;
  rep.seed = seed;
  rep.exact_norms = true;

  RatioAccumulator acc;
  acc.bound = p * q;
  acc.tol = tol;

  const std::size_t support_dim = window_g.size() * window_h.size();
  Eigen::MatrixXcd mat(static_cast<Eigen::Index>(dim_total),
                       static_cast<Eigen::Index>(dim_total));
  stream_samples(support_dim, trials, seed, [&](const std::string& kind,
                                                const Eigen::VectorXcd& c) {
    mat.setZero();
    for (std::size_t s = 0; s < window_g.size(); ++s)
      for (std::size_t t = 0; t < window_h.size(); ++t) {
        const auto coeff = c[static_cast<Eigen::Index>(s * window_h.size() + t)];
        if (coeff == std::complex<double>(0.0)) continue;
        for (std::size_t y1 = 0; y1 < ng; ++y1)
          for (std::size_t y2 = 0; y2 < nh; ++y2)
            mat(static_cast<Eigen::Index>(permg[s][y1] * nh + permh[t][y2]),
                static_cast<Eigen::Index>(y1 * nh + y2)) += coeff;
      }
    acc.feed(kind, dense_spectral_norm(mat), c.norm());
  });
  acc.finish(rep);
  return rep;
}

VerificationReport verify_power_inequality(GroupSpecPtr g, std::uint32_t n,
                                           std::uint32_t m, std::uint64_t trials,
                                           std::uint64_t seed, double tol,
                                           const Budget& budget) {
  if (!g) throw ValidationError("power inequality needs a base group");
  if (!g->is_finite())
    throw UnsupportedError("power inequality uses exact norms; the base must be finite");
  if (n == 0 || m > n)
    throw ValidationError("power inequality needs 1 <= n and m <= n");

  const auto gn = GroupSpec::direct_power(g, n);
  const auto everyone = all_elements(*gn, budget);
  const std::size_t dim_total = everyone.size();
  if (dim_total > 2048)
    throw BudgetError("power regular representation too large: " + std::to_string(dim_total));
  std::map<Element, std::size_t> index;
  for (std::size_t i = 0; i < dim_total; ++i) index[everyone[i]] = i;

  const auto window = ball(*g, 2, budget);
  const Element e_base = identity(*g);
  std::vector<Element> window_nontrivial;
  for (const auto& x : window)
    if (!(x == e_base)) window_nontrivial.push_back(x);

  // Support: every tuple with entries in the base ball-2 window and exactly
  // m non-neutral coordinates.
  std::vector<Element> support;
  {
    // Enumerate m-subsets of coordinates, then fillings.
    std::vector<std::uint32_t> subset(m);
    for (std::uint32_t i = 0; i < m; ++i) subset[i] = i;
    const Element e_tuple = identity(*gn);
    auto emit_fillings = [&](const std::vector<std::uint32_t>& slots) {
      std::vector<std::size_t> fill(m, 0);
      while (true) {
        Element::Tuple t = e_tuple.tuple_coords();
        for (std::uint32_t i = 0; i < m; ++i) t[slots[i]] = window_nontrivial[fill[i]];
        support.push_back(Element::tuple(t));
        std::size_t pos = 0;
        while (pos < m && ++fill[pos] == window_nontrivial.size()) {
          fill[pos] = 0;
          ++pos;
        }
        if (pos == m) break;
      }
    };
    if (m == 0) {
      support.push_back(e_tuple);
    } else {
      while (true) {
        emit_fillings(subset);
        std::size_t i = m;
        while (i > 0 && subset[i - 1] == i - 1 + n - m) --i;
        if (i == 0) break;
        ++subset[i - 1];
        for (std::size_t j = i; j < m; ++j) subset[j] = subset[j - 1] + 1;
      }
    }
  }
  if (support.size() > 4096) throw BudgetError("power support too large");

  std::vector<std::vector<std::size_t>> perm(support.size(),
                                             std::vector<std::size_t>(dim_total));
  for (std::size_t s = 0; s < support.size(); ++s)
    for (std::size_t y = 0; y < dim_total; ++y)
      perm[s][y] = index.at(multiply(*gn, support[s], everyone[y]));

  const double p = std::sqrt(static_cast<double>(window.size()));
  const double bound = std::sqrt(static_cast<double>(binomial_u64(n, m))) * std::pow(p, m);

  VerificationReport rep;
  rep.lemma = "direct_power";
  rep.group_display = gn->to_string();
  rep.params = {{"base", g->to_string()},
                {"n", n},
                {"m", m},
                {"window_size", window.size()},
                {"p", p},
                {"support_size", support.size()},
                {"dimension", dim_total}};
  rep.trials = trials;
  rep.seed = seed;
  rep.exact_norms = true;

  RatioAccumulator acc;
  acc.bound = bound;
  acc.tol = tol;

  Eigen::MatrixXcd mat(static_cast<Eigen::Index>(dim_total),
                       static_cast<Eigen::Index>(dim_total));
  stream_samples(support.size(), trials, seed, [&](const std::string& kind,
                                                   const Eigen::VectorXcd& c) {
    mat.setZero();
    for (std::size_t s = 0; s < support.size(); ++s) {
      const auto coeff = c[static_cast<Eigen::Index>(s)];
      if (coeff == std::complex<double>(0.0)) continue;
      for (std::size_t y = 0; y < dim_total; ++y)
        mat(static_cast<Eigen::Index>(perm[s][y]), static_cast<Eigen::Index>(y)) += coeff;
    }
    acc.feed(kind, dense_spectral_norm(mat), c.norm());
  });
  acc.finish(rep);
  return rep;
}

VerificationReport verify_freeprod_inequality(const std::vector<GroupSpecPtr>& factors,
                                              std::uint32_t radius, std::uint64_t trials,
                                              std::uint64_t seed, double tol,
                                              const Budget& budget) {
  if (factors.empty()) throw ValidationError("free-product inequality needs factors");
  for (const auto& f : factors) {
    if (!f) throw ValidationError("null factor");
    if (!f->is_finite())
      throw UnsupportedError("free-product inequality needs finite factors (exact p_i)");
  }
  std::vector<GroupSpec::Factor> fs;
  for (const auto& f : factors) fs.push_back({f, 1});
  const auto g = GroupSpec::free_product(std::move(fs));

  double pmax = 0.0;
  nlohmann::json pvals = nlohmann::json::array();
  {
    std::vector<const GroupSpec*> visited;
    for (const auto& f : factors) {
      const bool dup = std::any_of(visited.begin(), visited.end(),
                                   [&](const GroupSpec* s) { return s->equals(*f); });
      if (dup) continue;
      visited.push_back(f.get());
      const double p = std::sqrt(static_cast<double>(ball(*f, 2, budget).size()));
      pvals.push_back({{"factor", f->to_string()}, {"p", p}});
      pmax = std::max(pmax, p);
    }
  }
  const double bound = 5.0 * std::sqrt(2.0) * pmax;

  const auto basis = ball(*g, radius, budget);
  const auto support = ball(*g, 2, budget);
  std::map<Element, std::size_t> sidx;
  for (std::size_t k = 0; k < support.size(); ++k) sidx[support[k]] = k;

  // The matrix entries depend on the sample only through the support slot of
  // x_i x_j^{-1}; precompute that incidence once.
  struct Entry {
    Eigen::Index i, j;
    std::size_t slot;
  };
  std::vector<Entry> entries;
  {
    std::vector<Element> inv(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) inv[j] = inverse(*g, basis[j]);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const auto it = sidx.find(multiply(*g, basis[i], inv[j]));
        if (it != sidx.end())
          entries.push_back({static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j),
                             it->second});
      }
  }

  VerificationReport rep;
  rep.lemma = "free_product";
  rep.group_display = g->to_string();
  rep.params = {{"factors", pvals},
                {"radius", radius},
                {"support_size", support.size()},
                {"window_dimension", basis.size()},
                {"p_max", pmax}};
  rep.trials = trials;
  rep.seed = seed;
  rep.exact_norms = false;  // window spectra are lower bounds on the true norm

  RatioAccumulator acc;
  acc.bound = bound;
  acc.tol = tol;

  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd mat(dim, dim);
  stream_samples(support.size(), trials, seed, [&](const std::string& kind,
                                                   const Eigen::VectorXcd& c) {
    mat.setZero();
    for (const auto& en : entries) mat(en.i, en.j) += c[static_cast<Eigen::Index>(en.slot)];
    const double norm = basis.size() <= 320 ? dense_spectral_norm(mat)
                                            : power_iteration_norm(mat, 1e-10, 4000);
    acc.feed(kind, norm, c.norm());
  });
  acc.finish(rep);
  return rep;
}

NormBound haagerup_constant(const GroupSpec& group, const std::vector<Element>& window,
                            std::uint32_t trials, std::uint64_t seed,
                            const NormOptions& options, const Budget& budget) {
  if (window.empty()) throw ValidationError("haagerup constant needs a nonempty window");
  for (const auto& x : window) validate(group, x);
  const double cs = std::sqrt(static_cast<double>(window.size()));

  if (group.is_finite()) {
    // The normalized indicator of the window is an eigenvector of its own
    // convolution operator at eigenvalue sqrt(|E|): the bound is attained.
    return {cs, cs, "uniform_attainment", "cauchy_schwarz"};
  }

  GroupSpecPtr self = group.shared_from_this();
  double best = 0.0;
  std::string method = "sampled_lower_bound";
  stream_samples(window.size(), trials, seed, [&](const std::string&,
                                                  const Eigen::VectorXcd& c) {
    const double l2 = c.norm();
    if (l2 < 1e-12) return;
    AlgebraElement f(self);
    for (std::size_t k = 0; k < window.size(); ++k)
      f.add_term(window[k], c[static_cast<Eigen::Index>(k)]);
    const auto nb = operator_norm(group, f, options, budget);
    best = std::max(best, nb.lower / l2);
  });
  return {best, cs, method, "cauchy_schwarz"};
}

}  // namespace moelab
