#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "moelab/group_spec.hpp"

namespace moelab {

/// A density operator on the k-fold tensor power of l^2(G), stored in the
/// Dirac basis of k-tuples of group elements. Only finitely many basis
/// vectors carry weight; `basis` lists them and `matrix` holds the
/// coefficients in that order.
struct DensityState {
  GroupSpecPtr group;
  std::uint32_t power = 1;  // tensor factor count k
  std::vector<std::vector<Element>> basis;
  Eigen::MatrixXcd matrix;

  /// |delta_e><delta_e| on k tensor factors.
  static DensityState delta_identity(GroupSpecPtr group, std::uint32_t k = 1);
  /// Pure state from amplitudes over an explicit tuple basis.
  static DensityState pure(GroupSpecPtr group, std::uint32_t k,
                           std::vector<std::vector<Element>> basis,
                           const Eigen::VectorXcd& amplitudes);

  /// Hermitian within 1e-10, trace within 1e-9 of one, spectrum above
  /// -1e-10. Throws ValidationError otherwise.
  void check() const;
};

/// Averaged conjugation by the k-fold left translations of the generators:
/// rho -> N^{-k} sum_I Ad(lambda(g_{I_1}) x ... x lambda(g_{I_k}))(rho).
DensityState apply_left(const DensityState& rho, const Budget& budget = {});

/// Same with right translations (xi_x -> xi_{x g^{-1}}).
DensityState apply_right(const DensityState& rho, const Budget& budget = {});

/// Left channel composed with the right channel.
DensityState compose_left_right(const DensityState& rho, const Budget& budget = {});

/// Output of the complementary channel on the environment: an N^k x N^k
/// matrix indexed by multi-indices over the generators, with
///   entry(K, K') = N^{-k} sum_x rho[x, h x],   h_j = g_{K'_j}^{-1} g_{K_j}.
/// Exact for states supported on the stored basis.
Eigen::MatrixXcd complementary_output(const DensityState& rho, const Budget& budget = {});

/// -tr(rho log rho) in nats. Eigenvalues in [-1e-10, 0) are treated as 0;
/// anything lower is an invalid state. Requires a Hermitian matrix.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

/// Distance of the complementary output from the maximally mixed environment
/// state, checked against the closed-form bound driven by the norm constant
/// q of the generator window and the pair-collision statistic.
struct DeviationReport {
  std::uint32_t k = 1;
  std::uint64_t generator_count = 0;
  double q = 0.0;
  std::uint64_t pair_multiplicity = 1;
  double hs_deviation = 0.0;      // || output - I/N^k ||_2
  double deviation_bound = 0.0;   // N^{-k}((q^2 mult + N)^k - N^k)^{1/2}
  bool deviation_pass = false;
  double entropy = 0.0;           // von Neumann entropy of the output
  double renyi2 = 0.0;            // -log tr(output^2), a lower bound for entropy
  double entropy_chain_bound = 0.0;  // k log N - 2 log(1 + ((1+q^2 mult/N)^k - 1)^{1/2})
  bool chain_pass = false;
  double tol = 1e-9;
};
DeviationReport l2_deviation_check(const DensityState& rho, double q,
                                   std::uint64_t pair_multiplicity, double tol = 1e-9,
                                   const Budget& budget = {});

/// Projected gradient search for the minimal output entropy of the
/// complementary channel over pure states supported on the k-fold product of
/// the symmetric ball of the given radius.
struct MoeOptions {
  std::uint32_t radius = 3;
  std::uint32_t power = 1;  // k
  std::uint32_t restarts = 32;
  std::uint64_t seed = 0;
  double tol = 1e-9;           // objective stagnation tolerance
  std::uint32_t max_iter = 5000;
};

struct MoeResult {
  double best_value = 0.0;
  std::uint32_t best_restart = 0;
  bool converged = false;       // first-order stationary at the reported state
  double gradient_norm = 0.0;   // Riemannian gradient norm at the best state
  double state_norm_error = 0.0;
  std::size_t window_dimension = 0;
  std::vector<double> restart_values;
  Eigen::VectorXcd best_state;
};
MoeResult minimize_output_entropy(GroupSpecPtr group, const MoeOptions& options = {},
                                  const Budget& budget = {});

/// Entropy of (left o right)(|xi_e><xi_e|); closed form 2 log N - (log N)/N
/// when the 2N translate products g_i g_j^{-1} (i != j) are pairwise
/// distinct and non-neutral.
double composed_entropy_on_delta(GroupSpecPtr group, const Budget& budget = {});

}  // namespace moelab
