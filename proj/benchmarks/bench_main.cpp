#include <benchmark/benchmark.h>

#include "bdg/markov_chain.hpp"
#include "bdg/simulate.hpp"
#include "bdg/star_exact.hpp"
#include "bdg/surface_chain.hpp"

using namespace bdg;

namespace {

void BM_DiscreteRun(benchmark::State& state) {
  const Graph g = cycle(static_cast<int>(state.range(0)));
  SimConfig cfg;
  cfg.steps = 1'000'000;
  for (auto _ : state) benchmark::DoNotOptimize(run_discrete(g, cfg).max);
  state.SetItemsProcessed(state.iterations() * cfg.steps);
}
BENCHMARK(BM_DiscreteRun)->Arg(4)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ContinuousRun(benchmark::State& state) {
  const Graph g = butterfly();
  SimConfig cfg;
  cfg.horizon = 200'000;
  for (auto _ : state) benchmark::DoNotOptimize(run_continuous(g, cfg).max);
}
BENCHMARK(BM_ContinuousRun)->Unit(benchmark::kMillisecond);

void BM_SurfaceChainBuild(benchmark::State& state) {
  const Graph g = butterfly();
  const int M = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_truncated_surface_chain(g, M).chain.state_count);
}
BENCHMARK(BM_SurfaceChainBuild)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_StationarySolve(benchmark::State& state) {
  auto sc = build_truncated_surface_chain(butterfly(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stationary(sc.chain).residual);
  state.counters["states"] = sc.chain.state_count;
}
BENCHMARK(BM_StationarySolve)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_StarSeries(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gamma_star_series(n, 1e-12).value);
}
BENCHMARK(BM_StarSeries)->Arg(3)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_StarPoisson(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gamma_star_poisson(n));
}
BENCHMARK(BM_StarPoisson)->Arg(12)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
