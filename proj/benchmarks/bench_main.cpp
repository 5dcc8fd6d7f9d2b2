#include <benchmark/benchmark.h>

#include "ivm/bodies.hpp"
#include "ivm/experiments.hpp"
#include "ivm/metrics.hpp"
#include "ivm/rng.hpp"

namespace {

ivm::VPolytope random_body(std::size_t d, std::size_t n, std::uint64_t seed) {
  ivm::RngStream s{seed, 0, 0};
  std::vector<ivm::Vector> v;
  for (std::size_t i = 0; i < n; ++i) {
    ivm::Vector p(d);
    for (auto& x : p) x = s.gaussian();
    v.push_back(std::move(p));
  }
  return ivm::VPolytope(d, std::move(v));
}

void BM_DistanceToHull(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const ivm::VPolytope body = random_body(d, n, 1);
  ivm::RngStream s{2, 0, 0};
  for (auto _ : state) {
    ivm::Vector q(d);
    for (auto& x : q) x = 3.0 * s.gaussian();
    benchmark::DoNotOptimize(ivm::distance_to_hull(q, body));
  }
}
BENCHMARK(BM_DistanceToHull)->Args({3, 8})->Args({3, 64})->Args({8, 64})->Args({8, 512});

void BM_DeltaExactPlanar(benchmark::State& state) {
  const ivm::VPolytope a = random_body(3, 12, 3), b = random_body(3, 12, 4);
  ivm::SamplingPlan plan;
  plan.n_subspaces = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ivm::delta_j(a, b, 2, plan).value);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DeltaExactPlanar)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_DeltaMonteCarlo(benchmark::State& state) {
  const ivm::VPolytope a = random_body(4, 10, 5), b = random_body(4, 10, 6);
  ivm::SamplingPlan plan;
  plan.n_subspaces = 20;
  plan.n_points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ivm::delta_j(a, b, 3, plan).value);
  state.SetItemsProcessed(state.iterations() * 20 * state.range(0));
}
BENCHMARK(BM_DeltaMonteCarlo)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_UnboundednessRunner(benchmark::State& state) {
  ivm::ExperimentConfig cfg;
  cfg.steps = 6;
  for (auto _ : state) benchmark::DoNotOptimize(ivm::run_thm1(cfg).rows.size());
}
BENCHMARK(BM_UnboundednessRunner)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
