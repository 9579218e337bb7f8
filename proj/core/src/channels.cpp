#include "moelab/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "moelab/errors.hpp"
#include "moelab/groups.hpp"

namespace moelab {

namespace {

struct TupleLess {
  bool operator()(const std::vector<Element>& a, const std::vector<Element>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const int c = compare(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }
};

using TupleIndex = std::map<std::vector<Element>, std::size_t, TupleLess>;

std::vector<Element> checked_generators(const GroupSpec& g, std::uint32_t k,
                                        const Budget& budget) {
  const auto gens = generators(g, budget);
  double dim = 1.0;
  for (std::uint32_t j = 0; j < k; ++j) dim *= static_cast<double>(gens.size());
  if (dim > 4096.0)
    throw BudgetError("environment dimension " + std::to_string(dim) +
                      " exceeds the supported size");
  return gens;
}

// Enumerates multi-indices I in [0,N)^k in lexicographic order (last digit
// fastest) and hands each to fn.
template <class Fn>
void for_each_multi_index(std::size_t n, std::uint32_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    fn(const_cast<const std::vector<std::size_t>&>(idx));
    std::uint32_t pos = k;
    while (pos > 0) {
      if (++idx[pos - 1] < n) break;
      idx[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
}

DensityState apply_translations(const DensityState& rho, bool left, const Budget& budget) {
  rho.check();
  const auto& g = *rho.group;
  const auto gens = checked_generators(g, rho.power, budget);
  const std::size_t n = gens.size();
  std::vector<Element> gens_inv(n);
  for (std::size_t i = 0; i < n; ++i) gens_inv[i] = inverse(g, gens[i]);

  const std::size_t b = rho.basis.size();

  // Translated copies of each basis tuple, one per multi-index; the output
  // basis keeps the input order and appends new tuples in discovery order.
  TupleIndex index;
  std::vector<std::vector<Element>> out_basis = rho.basis;
  for (std::size_t x = 0; x < b; ++x) index[rho.basis[x]] = x;

  std::vector<std::vector<std::size_t>> translated;  // per multi-index: tuple -> out index
  for_each_multi_index(n, rho.power, [&](const std::vector<std::size_t>& I) {
    std::vector<std::size_t> row(b);
    for (std::size_t x = 0; x < b; ++x) {
      std::vector<Element> t = rho.basis[x];
      for (std::uint32_t j = 0; j < rho.power; ++j)
        t[j] = left ? multiply(g, gens[I[j]], t[j]) : multiply(g, t[j], gens_inv[I[j]]);
      auto [it, inserted] = index.try_emplace(t, out_basis.size());
      if (inserted) {
        if (out_basis.size() >= budget.max_elements)
          throw BudgetError("channel output basis exceeds the budget");
        out_basis.push_back(std::move(t));
      }
      row[x] = it->second;
    }
    translated.push_back(std::move(row));
  });

  const double weight = 1.0 / static_cast<double>(translated.size());
  DensityState out;
  out.group = rho.group;
  out.power = rho.power;
  out.matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(out_basis.size()),
                                      static_cast<Eigen::Index>(out_basis.size()));
  for (const auto& row : translated)
    for (std::size_t x = 0; x < b; ++x)
      for (std::size_t y = 0; y < b; ++y)
        out.matrix(static_cast<Eigen::Index>(row[x]), static_cast<Eigen::Index>(row[y])) +=
            weight * rho.matrix(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
  out.basis = std::move(out_basis);
  return out;
}

}  // namespace

DensityState DensityState::delta_identity(GroupSpecPtr group, std::uint32_t k) {
  if (!group) throw ValidationError("state needs a group");
  if (k == 0) throw ValidationError("tensor power must be >= 1");
  DensityState out;
  out.group = std::move(group);
  out.power = k;
  out.basis = {std::vector<Element>(k, identity(*out.group))};
  out.matrix = Eigen::MatrixXcd::Ones(1, 1);
  return out;
}

DensityState DensityState::pure(GroupSpecPtr group, std::uint32_t k,
                                std::vector<std::vector<Element>> basis,
                                const Eigen::VectorXcd& amplitudes) {
  if (!group) throw ValidationError("state needs a group");
  if (k == 0) throw ValidationError("tensor power must be >= 1");
  if (static_cast<Eigen::Index>(basis.size()) != amplitudes.size())
    throw ValidationError("amplitude count does not match the basis");
  for (const auto& t : basis) {
    if (t.size() != k) throw ValidationError("basis tuple arity mismatch");
    for (const auto& x : t) validate(*group, x);
  }
  const double nrm = amplitudes.norm();
  if (std::abs(nrm - 1.0) > 1e-9)
    throw ValidationError("pure state amplitudes are not normalized");
  DensityState out;
  out.group = std::move(group);
  out.power = k;
  out.basis = std::move(basis);
  out.matrix = amplitudes * amplitudes.adjoint();
  return out;
}

void DensityState::check() const {
  if (!group) throw ValidationError("state has no group");
  if (static_cast<std::size_t>(matrix.rows()) != basis.size() ||
      static_cast<std::size_t>(matrix.cols()) != basis.size())
    throw ValidationError("state matrix does not match its basis");
  const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10)
    throw ValidationError("state is not Hermitian (defect " + std::to_string(herm) + ")");
  const double tr = matrix.trace().real();
  if (std::abs(tr - 1.0) > 1e-9)
    throw ValidationError("state trace is " + std::to_string(tr));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10)
    throw ValidationError("state has a negative eigenvalue: " +
                          std::to_string(solver.eigenvalues().minCoeff()));
}

DensityState apply_left(const DensityState& rho, const Budget& budget) {
  return apply_translations(rho, true, budget);
}

DensityState apply_right(const DensityState& rho, const Budget& budget) {
  return apply_translations(rho, false, budget);
}

DensityState compose_left_right(const DensityState& rho, const Budget& budget) {
  return apply_left(apply_right(rho, budget), budget);
}

Eigen::MatrixXcd complementary_output(const DensityState& rho, const Budget& budget) {
  rho.check();
  const auto& g = *rho.group;
  const auto gens = checked_generators(g, rho.power, budget);
  const std::size_t n = gens.size();

  // h(a, b) = g_b^{-1} g_a per coordinate pair.
  std::vector<std::vector<Element>> pair_h(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      pair_h[a][b] = multiply(g, inverse(g, gens[b]), gens[a]);

  TupleIndex index;
  for (std::size_t x = 0; x < rho.basis.size(); ++x) index[rho.basis[x]] = x;

  std::vector<std::vector<std::size_t>> multi;  // all multi-indices, in order
  for_each_multi_index(n, rho.power, [&](const std::vector<std::size_t>& I) {
    multi.push_back(I);
  });
  const std::size_t dim = multi.size();
  const double scale = 1.0 / static_cast<double>(dim);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
  std::vector<Element> shifted;
  for (std::size_t ka = 0; ka < dim; ++ka)
    for (std::size_t kb = 0; kb < dim; ++kb) {
      std::complex<double> sum = 0.0;
      for (std::size_t x = 0; x < rho.basis.size(); ++x) {
        shifted = rho.basis[x];
        for (std::uint32_t j = 0; j < rho.power; ++j)
          shifted[j] = multiply(g, pair_h[multi[ka][j]][multi[kb][j]], shifted[j]);
        const auto it = index.find(shifted);
        if (it == index.end()) continue;
        sum += rho.matrix(static_cast<Eigen::Index>(x),
                          static_cast<Eigen::Index>(it->second));
      }
      out(static_cast<Eigen::Index>(ka), static_cast<Eigen::Index>(kb)) = scale * sum;
    }
  return out;
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols()) throw ValidationError("entropy of a non-square matrix");
  if (rho.rows() == 0) return 0.0;
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10)
    throw ValidationError("entropy needs a Hermitian matrix (defect " +
                          std::to_string(herm) + ")");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lam = solver.eigenvalues()[i];
    if (lam < -1e-10)
      throw ValidationError("entropy of a state with eigenvalue " + std::to_string(lam));
    if (lam > 0.0) h -= lam * std::log(lam);
  }
  return h;
}

DeviationReport l2_deviation_check(const DensityState& rho, double q,
                                   std::uint64_t pair_multiplicity, double tol,
                                   const Budget& budget) {
  const auto out = complementary_output(rho, budget);
  const auto k = rho.power;
  const std::size_t dims = static_cast<std::size_t>(out.rows());
  const std::size_t n = to_u64(rho.group->generator_count());

  DeviationReport rep;
  rep.k = k;
  rep.generator_count = n;
  rep.q = q;
  rep.pair_multiplicity = pair_multiplicity;
  rep.tol = tol;

  Eigen::MatrixXcd dev = out;
  const double unif = 1.0 / static_cast<double>(dims);
  for (Eigen::Index i = 0; i < dev.rows(); ++i) dev(i, i) -= unif;
  rep.hs_deviation = dev.norm();  // Frobenius

  const double ratio = q * q * static_cast<double>(pair_multiplicity) / double(n);
  rep.deviation_bound =
      std::sqrt(std::max(0.0, std::pow(1.0 + ratio, double(k)) - 1.0)) /
      std::sqrt(static_cast<double>(dims));
  rep.deviation_pass = rep.hs_deviation <= rep.deviation_bound + tol;

  rep.entropy = von_neumann_entropy(out);
  const double purity = out.squaredNorm();  // tr(out^2) for Hermitian out
  rep.renyi2 = -std::log(purity);
  rep.entropy_chain_bound =
      double(k) * std::log(double(n)) -
      2.0 * std::log1p(std::sqrt(std::max(0.0, std::pow(1.0 + ratio, double(k)) - 1.0)));
  rep.chain_pass = rep.renyi2 >= rep.entropy_chain_bound - tol &&
                   rep.entropy >= rep.renyi2 - tol;
  return rep;
}

namespace {

// Output + gradient machinery for the entropy minimizer: everything is
// precomputed against a fixed window, so one objective evaluation costs
// O(N^{2k} d).
struct MoeWorkspace {
  std::size_t n = 0;        // generator count
  std::uint32_t k = 1;
  std::size_t d1 = 0;       // one-coordinate window size
  std::size_t d = 0;        // window size d1^k
  std::size_t env = 0;      // environment dimension n^k
  std::vector<std::vector<std::int64_t>> sigma;  // [env*env][d] partial maps
  double scale = 0.0;       // 1/n^k

  Eigen::MatrixXcd output(const Eigen::VectorXcd& psi) const {
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(env), static_cast<Eigen::Index>(env));
    for (std::size_t a = 0; a < env; ++a)
      for (std::size_t b = 0; b < env; ++b) {
        const auto& sg = sigma[a * env + b];
        std::complex<double> sum = 0.0;
        for (std::size_t z = 0; z < d; ++z) {
          const auto w = sg[z];
          if (w >= 0)
            sum += psi[static_cast<Eigen::Index>(z)] *
                   std::conj(psi[static_cast<Eigen::Index>(w)]);
        }
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = scale * sum;
      }
    return out;
  }

  // Entropy and the Wirtinger gradient d H / d conj(psi).
  double entropy_and_gradient(const Eigen::VectorXcd& psi, Eigen::VectorXcd& grad) const {
    const Eigen::MatrixXcd out = output(psi);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(out);
    double h = 0.0;
    Eigen::VectorXd logs(solver.eigenvalues().size());
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      const double lam = solver.eigenvalues()[i];
      if (lam > 0.0) h -= lam * std::log(lam);
      logs[i] = std::log(std::max(lam, 1e-18));
    }
    // M = log(out) + I through the same eigenbasis (clamped below).
    const Eigen::VectorXd shifted_logs = logs.array() + 1.0;
    const Eigen::MatrixXcd m = solver.eigenvectors() *
                               shifted_logs.cast<std::complex<double>>().asDiagonal() *
                               solver.eigenvectors().adjoint();
    grad = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t a = 0; a < env; ++a)
      for (std::size_t b = 0; b < env; ++b) {
        const std::complex<double> coeff =
            -scale * m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        if (coeff == std::complex<double>(0.0)) continue;
        const auto& sg = sigma[a * env + b];
        for (std::size_t z = 0; z < d; ++z) {
          const auto w = sg[z];
          if (w >= 0) grad[static_cast<Eigen::Index>(z)] += coeff * psi[static_cast<Eigen::Index>(w)];
        }
      }
    return h;
  }

  double entropy_only(const Eigen::VectorXcd& psi) const {
    return von_neumann_entropy(output(psi));
  }
};

}  // namespace

MoeResult minimize_output_entropy(GroupSpecPtr group, const MoeOptions& options,
                                  const Budget& budget) {
  if (!group) throw ValidationError("entropy minimization needs a group");
  if (options.power == 0) throw ValidationError("tensor power must be >= 1");
  const auto& g = *group;
  const auto gens = checked_generators(g, options.power, budget);
  const std::size_t n = gens.size();

  const auto window1 = symmetric_ball(g, options.radius, budget);
  const std::size_t d1 = window1.size();
  double dim_check = 1.0;
  for (std::uint32_t j = 0; j < options.power; ++j) dim_check *= double(d1);
  if (dim_check > 20000.0)
    throw BudgetError("entropy minimization window too large: " +
                      std::to_string(dim_check));

  MoeWorkspace ws;
  ws.n = n;
  ws.k = options.power;
  ws.d1 = d1;
  ws.d = static_cast<std::size_t>(dim_check);
  ws.env = 1;
  for (std::uint32_t j = 0; j < options.power; ++j) ws.env *= n;
  ws.scale = 1.0 / static_cast<double>(ws.env);

  // One-coordinate partial translation maps z -> index of h(a,b) * z.
  std::map<Element, std::size_t> w1_index;
  for (std::size_t i = 0; i < d1; ++i) w1_index[window1[i]] = i;
  std::vector<std::vector<std::int64_t>> pmap(n * n, std::vector<std::int64_t>(d1, -1));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Element h = multiply(g, inverse(g, gens[b]), gens[a]);
      for (std::size_t z = 0; z < d1; ++z) {
        const auto it = w1_index.find(multiply(g, h, window1[z]));
        if (it != w1_index.end()) pmap[a * n + b][z] = static_cast<std::int64_t>(it->second);
      }
    }

  // Tuple digits (little-endian in d1) for every window index.
  std::vector<std::vector<std::size_t>> digits(ws.d, std::vector<std::size_t>(ws.k));
  for (std::size_t z = 0; z < ws.d; ++z) {
    std::size_t v = z;
    for (std::uint32_t j = 0; j < ws.k; ++j) {
      digits[z][j] = v % d1;
      v /= d1;
    }
  }
  std::vector<std::vector<std::size_t>> env_digits(ws.env, std::vector<std::size_t>(ws.k));
  for (std::size_t a = 0; a < ws.env; ++a) {
    std::size_t v = a;
    for (std::uint32_t j = 0; j < ws.k; ++j) {
      env_digits[a][j] = v % n;
      v /= n;
    }
  }

  if (ws.env * ws.env * ws.d > 60'000'000)
    throw BudgetError("entropy minimization sigma tables too large");
  ws.sigma.assign(ws.env * ws.env, std::vector<std::int64_t>(ws.d, -1));
  for (std::size_t a = 0; a < ws.env; ++a)
    for (std::size_t b = 0; b < ws.env; ++b) {
      auto& sg = ws.sigma[a * ws.env + b];
      for (std::size_t z = 0; z < ws.d; ++z) {
        std::size_t out_index = 0;
        std::size_t stride = 1;
        bool ok = true;
        for (std::uint32_t j = 0; j < ws.k; ++j) {
          const auto w = pmap[env_digits[a][j] * n + env_digits[b][j]][digits[z][j]];
          if (w < 0) {
            ok = false;
            break;
          }
          out_index += static_cast<std::size_t>(w) * stride;
          stride *= d1;
        }
        if (ok) sg[z] = static_cast<std::int64_t>(out_index);
      }
    }

  // Starting points: the identity delta, the uniform state, a spectral
  // heuristic (top eigenvector of the symmetrized translate sum), then
  // seeded Gaussian draws.
  std::vector<Eigen::VectorXcd> starts;
  {
    Eigen::VectorXcd delta = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(ws.d));
    delta[0] = 1.0;  // window element 0 is the identity tuple
    starts.push_back(delta);
    starts.push_back(Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(ws.d)).normalized());

    Eigen::MatrixXcd heur = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d1),
                                                   static_cast<Eigen::Index>(d1));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const auto& mp = pmap[a * n + b];
        for (std::size_t z = 0; z < d1; ++z)
          if (mp[z] >= 0) heur(static_cast<Eigen::Index>(mp[z]), static_cast<Eigen::Index>(z)) += 1.0;
      }
    const Eigen::MatrixXcd sym = 0.5 * (heur + heur.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(sym);
    Eigen::VectorXcd v1 = hs.eigenvectors().col(hs.eigenvectors().cols() - 1);
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(ws.d));
    for (std::size_t z = 0; z < ws.d; ++z) {
      std::complex<double> prod = 1.0;
      for (std::uint32_t j = 0; j < ws.k; ++j)
        prod *= v1[static_cast<Eigen::Index>(digits[z][j])];
      v[static_cast<Eigen::Index>(z)] = prod;
    }
    if (v.norm() > 1e-12) starts.push_back(v.normalized());
  }

  MoeResult res;
  res.window_dimension = ws.d;
  res.best_value = std::numeric_limits<double>::infinity();

  const std::uint32_t restarts = std::max<std::uint32_t>(options.restarts, 1);
  for (std::uint32_t r = 0; r < restarts; ++r) {
    Eigen::VectorXcd psi;
    if (r < starts.size()) {
      psi = starts[r];
    } else {
      std::mt19937_64 rng(options.seed * 1000003ull + r);
      std::normal_distribution<double> normal(0.0, 1.0);
      psi.resize(static_cast<Eigen::Index>(ws.d));
      for (Eigen::Index i = 0; i < psi.size(); ++i)
        psi[i] = std::complex<double>(normal(rng), normal(rng));
      psi.normalize();
    }

    Eigen::VectorXcd grad;
    double h = ws.entropy_and_gradient(psi, grad);
    bool stationary = false;
    double gnorm = 0.0;
    for (std::uint32_t it = 0; it < options.max_iter; ++it) {
      // Riemannian gradient on the unit sphere (phase direction included in
      // the projection).
      Eigen::VectorXcd tangent = grad - psi * psi.dot(grad);
      gnorm = tangent.norm();
      if (gnorm <= 1e-6 * std::max(1.0, std::abs(h))) {
        stationary = true;
        break;
      }
      // Armijo backtracking along the projected descent direction.
      double step = 1.0;
      bool moved = false;
      for (int halvings = 0; halvings < 45; ++halvings) {
        Eigen::VectorXcd cand = psi - step * tangent;
        const double cn = cand.norm();
        if (cn > 1e-12) {
          cand /= cn;
          const double hc = ws.entropy_only(cand);
          if (hc <= h - 1e-4 * step * gnorm * gnorm) {
            psi = std::move(cand);
            h = ws.entropy_and_gradient(psi, grad);
            moved = true;
            break;
          }
        }
        step *= 0.5;
      }
      if (!moved) {
        // No decrease at the smallest step: numerically stationary.
        stationary = gnorm <= 1e-5 * std::max(1.0, std::abs(h));
        break;
      }
    }

    res.restart_values.push_back(h);
    if (h < res.best_value - 1e-15) {
      res.best_value = h;
      res.best_restart = r;
      res.converged = stationary;
      res.gradient_norm = gnorm;
      res.best_state = psi;
      res.state_norm_error = std::abs(psi.norm() - 1.0);
    }
  }
  return res;
}

double composed_entropy_on_delta(GroupSpecPtr group, const Budget& budget) {
  auto rho = DensityState::delta_identity(std::move(group), 1);
  const auto out = compose_left_right(rho, budget);
  return von_neumann_entropy(out.matrix);
}

}  // namespace moelab
