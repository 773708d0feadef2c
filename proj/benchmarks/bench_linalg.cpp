#include <benchmark/benchmark.h>

#include <random>

#include "payband/estimation.hpp"
#include "payband/linalg.hpp"

namespace {

payband::Matrix spd(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  payband::Matrix a = payband::Matrix::identity(d);
  for (std::size_t k = 0; k < 2 * d; ++k) {
    payband::Vector x(d);
    for (double& v : x) v = normal(rng);
    a.add_outer(x);
  }
  return a;
}

void BM_SolveSpd(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  const auto a = spd(d, rng);
  const payband::Vector b(d, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(payband::solve_spd(a, b));
}
BENCHMARK(BM_SolveSpd)->Arg(4)->Arg(14)->Arg(64);

void BM_MinEig(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  const auto a = spd(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(payband::min_eig_sym(a));
}
BENCHMARK(BM_MinEig)->Arg(4)->Arg(14);

void BM_EstimatorUpdate(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  auto s = payband::EstimatorState::ridge(0, d);
  payband::Vector x(d);
  for (auto _ : state) {
    for (double& v : x) v = normal(rng);
    s.absorb(x, normal(rng));
    benchmark::DoNotOptimize(s.estimate());
  }
}
BENCHMARK(BM_EstimatorUpdate)->Arg(4)->Arg(14);

}  // namespace
