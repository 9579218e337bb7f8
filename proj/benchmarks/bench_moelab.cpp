#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "moelab/certify.hpp"
#include "moelab/channels.hpp"
#include "moelab/combinatorics.hpp"
#include "moelab/groups.hpp"
#include "moelab/harmonic.hpp"

using namespace moelab;

namespace {

AlgebraElement random_ball_function(const GroupSpecPtr& group, std::uint32_t radius,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  AlgebraElement f(group);
  for (const auto& x : ball(*group, radius)) f.add_term(x, {gauss(rng), gauss(rng)});
  return f;
}

void bench_ball_enumeration(benchmark::State& state) {
  const auto f2 = GroupSpec::free_group(2);
  const auto radius = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    auto elements = ball(*f2, radius, Budget{1u << 22});
    benchmark::DoNotOptimize(elements);
  }
  state.SetLabel("free group rank 2, positive ball");
}
BENCHMARK(bench_ball_enumeration)->Arg(6)->Arg(9)->Arg(12);

void bench_dense_norm(benchmark::State& state) {
  const auto f2 = GroupSpec::free_group(2);
  const auto f = random_ball_function(f2, 2, 1);
  const auto comp = compression(*f2, f, static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dense_spectral_norm(comp.matrix));
  state.SetLabel(std::to_string(comp.basis.size()) + "-dim window");
}
BENCHMARK(bench_dense_norm)->Arg(4)->Arg(6);

void bench_power_iteration(benchmark::State& state) {
  const auto f2 = GroupSpec::free_group(2);
  const auto f = random_ball_function(f2, 2, 1);
  const auto comp = compression(*f2, f, static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(power_iteration_norm(comp.matrix, 1e-10, 4000));
  state.SetLabel(std::to_string(comp.basis.size()) + "-dim window");
}
BENCHMARK(bench_power_iteration)->Arg(4)->Arg(6);

void bench_complementary_entropy(benchmark::State& state) {
  const auto f3 = GroupSpec::free_group(3);
  const auto k = static_cast<std::uint32_t>(state.range(0));
  const auto window = ball(*f3, 1);
  std::vector<std::vector<Element>> basis{{}};
  for (std::uint32_t j = 0; j < k; ++j) {
    std::vector<std::vector<Element>> next;
    for (const auto& prefix : basis)
      for (const auto& x : window) {
        auto tuple = prefix;
        tuple.push_back(x);
        next.push_back(std::move(tuple));
      }
    basis = std::move(next);
  }
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd amplitudes(static_cast<Eigen::Index>(basis.size()));
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i)
    amplitudes[i] = std::complex<double>(gauss(rng), gauss(rng));
  amplitudes.normalize();
  const auto rho = DensityState::pure(f3, k, basis, amplitudes);
  for (auto _ : state)
    benchmark::DoNotOptimize(von_neumann_entropy(complementary_output(rho)));
}
BENCHMARK(bench_complementary_entropy)->Arg(1)->Arg(2);

void bench_kappa(benchmark::State& state) {
  const auto n = parse_bigint("10^84");
  const auto bits = static_cast<mpfr_prec_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kappa(n, bits));
}
BENCHMARK(bench_kappa)->Arg(256)->Arg(1024);

void bench_certify_free_product(benchmark::State& state) {
  const std::vector<GroupSpec::Factor> factors{
      {GroupSpec::cyclic(5), parse_bigint("10^84")}};
  for (auto _ : state) {
    auto cert = certify_free_product(1, factors);
    benchmark::DoNotOptimize(cert);
  }
  state.SetLabel("escalates 256 -> 512 bits");
}
BENCHMARK(bench_certify_free_product);

void bench_pair_multiplicity(benchmark::State& state) {
  const auto g = GroupSpec::cyclic_with_generators(
      101, {1, 2, 3, 5, 8, 13, 21, 34, 55, 89});
  for (auto _ : state) benchmark::DoNotOptimize(pair_multiplicity(*g));
}
BENCHMARK(bench_pair_multiplicity);

}  // namespace

BENCHMARK_MAIN();
