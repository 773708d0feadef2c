#include <benchmark/benchmark.h>

#include "payband/simulation.hpp"

namespace {

payband::InstanceSpec instance() {
  payband::InstanceSpec in;
  in.n_arms = 8;
  in.dim = 4;
  in.horizon = 800;
  for (std::size_t i = 0; i < in.n_arms; ++i) {
    payband::Vector mu(in.dim, 0.0);
    mu[i % in.dim] = 0.2 + 0.1 * static_cast<double>(i / in.dim);
    in.true_attrs.push_back(mu);
  }
  in.noise_std = 0.1;
  in.init_explore_m = 32;
  in.context_source = payband::GaussianIID{payband::Vector(in.dim, 0.0), 0.5};
  return in;
}

void BM_Run(benchmark::State& state) {
  const auto in = instance();
  payband::PolicyConfig pc;
  pc.kind = static_cast<payband::PolicyKind>(state.range(0));
  if (pc.kind == payband::PolicyKind::CBChainedRestricted) pc.budget = 20.0;
  state.SetLabel(std::string(payband::to_string(pc.kind)));
  std::size_t run = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(payband::run_single(in, pc, payband::seeds_for(7, 0, run++)));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * in.horizon));
}
BENCHMARK(BM_Run)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

}  // namespace
