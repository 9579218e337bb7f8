#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "moelab/group_spec.hpp"

namespace moelab {

/// A finitely supported function on a group, i.e. an element of the group
/// algebra acting on l^2(G) by left convolution.
class AlgebraElement {
 public:
  using Coefficient = std::complex<double>;
  using Support = std::map<Element, Coefficient>;

  explicit AlgebraElement(GroupSpecPtr group);

  static AlgebraElement delta(GroupSpecPtr group, const Element& at,
                              Coefficient amplitude = 1.0);

  const GroupSpecPtr& group() const noexcept { return group_; }
  const Support& support() const noexcept { return values_; }
  std::size_t support_size() const noexcept { return values_.size(); }

  /// Accumulates; exact zero results are dropped from the support.
  void add_term(const Element& at, Coefficient amplitude);
  Coefficient at(const Element& x) const;

  double l2_norm() const;
  /// f~(g) = conj(f(g^{-1})); so that adjoint(f) * f is positive definite.
  AlgebraElement adjoint() const;

 private:
  GroupSpecPtr group_;
  Support values_;
};

/// Convolution product (f * h)(g) = sum_k f(k) h(k^{-1} g).
AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& h);

/// The convolution operator cut down to a finite window of l^2(G):
/// matrix[i][j] = f(x_i x_j^{-1}) over the listed basis. For finite groups
/// the basis is the whole group (the matrix is the regular representation);
/// otherwise it is the positive ball of the given radius.
struct Compression {
  std::vector<Element> basis;
  Eigen::MatrixXcd matrix;
};
Compression compression(const GroupSpec& group, const AlgebraElement& f,
                        std::uint32_t radius, const Budget& budget = {});

/// Two-sided enclosure of the convolution-operator norm with the method that
/// produced each side.
struct NormBound {
  double lower = 0.0;
  double upper = 0.0;
  std::string lower_method;
  std::string upper_method;
};

struct NormOptions {
  std::uint32_t radius = 3;      // compression window for infinite groups
  double tol = 1e-10;            // power-iteration stopping tolerance
  std::uint32_t max_iter = 10000;
};

/// Norm of λ(f) on l^2(G). Exact (both sides equal) for finite groups via
/// the full regular representation; for infinite groups the lower side is
/// the best of compression spectra and return-moment estimates, the upper
/// side the best registered inequality for the support shape.
NormBound operator_norm(const GroupSpec& group, const AlgebraElement& f,
                        const NormOptions& options = {}, const Budget& budget = {});

/// Largest singular value of a dense matrix (exact up to LAPACK-grade
/// rounding).
double dense_spectral_norm(const Eigen::MatrixXcd& a);

/// Monotone-from-below estimate of the largest singular value.
double power_iteration_norm(const Eigen::MatrixXcd& a, double tol = 1e-10,
                            std::uint32_t max_iter = 10000);

/// Return-moment lower bound: ((f~ * f)^{* 2^j})(e)^{1 / 2^{j+1}}, maximized
/// over j while the convolution powers stay within the budget. Needs no
/// truncation window, so it is immune to compression bias.
double moment_lower_bound(const AlgebraElement& f, const Budget& budget = {});

/// Best registered upper bound for functions supported on the ball of
/// radius 2, normalized to unit l^2 norm:
///   finite group              sqrt(|B_2|)      (attained)
///   free group of rank r      sqrt(min(14, 1 + r + r^2))
///   free product              5 sqrt(2) max_i over factors
///   direct power G^n          sqrt(sum_{m<=2} C(n,m) p^{2m}),  p = base constant
double ball2_norm_constant(const GroupSpec& group, const Budget& budget = {});

/// sup { ||λ(f)|| : supp f ⊆ E, ||f||_2 = 1 }. Upper side sqrt(|E|) always;
/// attained (hence exact) on finite groups, sampled from below otherwise.
NormBound haagerup_constant(const GroupSpec& group, const std::vector<Element>& window,
                            std::uint32_t trials = 16, std::uint64_t seed = 0,
                            const NormOptions& options = {}, const Budget& budget = {});

/// One randomized check of a norm inequality over a fixed support.
struct SampleWitness {
  std::uint64_t index = 0;
  std::string kind;  // "delta", "uniform", "signs", "gaussian"
  double ratio = 0.0;
  double norm = 0.0;
  double l2 = 0.0;
};

struct VerificationReport {
  std::string lemma;  // which inequality family: product / direct_power / free_product
  std::string group_display;
  nlohmann::json params;
  std::uint64_t trials = 0;         // requested random samples
  std::uint64_t total_samples = 0;  // including deterministic ones
  std::uint64_t seed = 0;
  double bound = 0.0;
  double max_ratio = 0.0;
  double margin = 0.0;  // bound - max_ratio
  double tol = 1e-9;
  bool pass = false;
  bool exact_norms = true;  // false when norms are lower bounds only
  std::vector<SampleWitness> witnesses;

  nlohmann::json to_json() const;
};

/// ||λ_{G x H}(φ)|| <= p q ||φ||_2 for φ supported on E x F, where p, q
/// bound the one-variable constants of E and F. Exact norms via the regular
/// representation of the product (finite groups).
VerificationReport verify_product_inequality(GroupSpecPtr g, GroupSpecPtr h,
                                             const std::vector<Element>& window_g,
                                             const std::vector<Element>& window_h,
                                             std::uint64_t trials, std::uint64_t seed,
                                             double tol = 1e-9,
                                             const Budget& budget = {});

/// ||λ_{G^n}(φ)|| <= C(n,m)^{1/2} p^m ||φ||_2 for φ supported on tuples of
/// ball-2 entries with exactly m non-neutral coordinates.
VerificationReport verify_power_inequality(GroupSpecPtr g, std::uint32_t n,
                                           std::uint32_t m, std::uint64_t trials,
                                           std::uint64_t seed, double tol = 1e-9,
                                           const Budget& budget = {});

/// ||λ(φ)|| <= 5 sqrt(2) max_i sqrt(|B_2(G_i)|) ||φ||_2 for φ supported on
/// the ball of radius 2 of a free product of finite groups. Norms are
/// compression lower bounds (the group is infinite), so a violation here is
/// a genuine counterexample while passing is falsification evidence only.
VerificationReport verify_freeprod_inequality(const std::vector<GroupSpecPtr>& factors,
                                              std::uint32_t radius, std::uint64_t trials,
                                              std::uint64_t seed, double tol = 1e-9,
                                              const Budget& budget = {});

}  // namespace moelab
