#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sigmak/expand.hpp"
#include "sigmak/geomodel.hpp"
#include "sigmak/radial.hpp"
#include "sigmak/symkit.hpp"
#include "sigmak/verify.hpp"

namespace {

sigmak::SymMatrix random_matrix(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  sigmak::SymMatrix a(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) a.set(i, j, u(rng));
  }
  return a;
}

void BM_ElementarySymmetric(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = 0.1 * (i + 1);
  for (auto _ : state) benchmark::DoNotOptimize(sigmak::elementary_symmetric(v, n / 2));
}
BENCHMARK(BM_ElementarySymmetric)->Arg(4)->Arg(8)->Arg(32);

void BM_SigmaKMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = random_matrix(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(sigmak::sigma_k_matrix(a, n / 2));
}
BENCHMARK(BM_SigmaKMatrix)->Arg(3)->Arg(6)->Arg(8);

void BM_NewtonTransform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(sigmak::newton_transform(a, n - 1));
}
BENCHMARK(BM_NewtonTransform)->Arg(3)->Arg(6)->Arg(8);

void BM_SolveCoefficients(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = sigmak::ball_geometry(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(sigmak::solve_coefficients(g, n));
}
BENCHMARK(BM_SolveCoefficients)->DenseRange(3, 8)->Unit(benchmark::kMicrosecond);

void BM_Shoot(benchmark::State& state) {
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sigmak::shoot_finite_bvp(3, 1, 1.0, 5.0, grid));
}
BENCHMARK(BM_Shoot)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Fit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto samples = sigmak::exact_ball_samples(1.0, 3, 14, 8);
  for (auto _ : state) benchmark::DoNotOptimize(sigmak::fit_expansion(samples, n));
}
BENCHMARK(BM_Fit)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
