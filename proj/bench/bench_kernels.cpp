// Serial reference vs OpenMP kernels on a percolated random cubic graph.
// Set GIANTLAB_THREADS or OMP_NUM_THREADS to control the parallel runs.

#include <benchmark/benchmark.h>

#include <map>

#include "giantlab/generators.hpp"
#include "giantlab/monte_carlo.hpp"
#include "giantlab/percolation.hpp"

using namespace giantlab;

namespace {

const Graph& cubic(std::size_t n) {
  static std::map<std::size_t, Graph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, random_regular(n, 3, 1)).first;
  return it->second;
}

void BM_Sample(benchmark::State& state, Exec exec) {
  const Graph& g = cubic(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample(g, 0.75, ++seed, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}

void BM_Components(benchmark::State& state) {
  const Graph& g = cubic(static_cast<std::size_t>(state.range(0)));
  const EdgeMask mask = sample(g, 0.75, 3);
  for (auto _ : state) benchmark::DoNotOptimize(components(g, mask));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}

void BM_TwoCore(benchmark::State& state) {
  const Graph& g = cubic(static_cast<std::size_t>(state.range(0)));
  const EdgeMask mask = sample(g, 0.75, 3);
  const auto comps = components(g, mask);
  for (auto _ : state) benchmark::DoNotOptimize(two_core(g, mask, comps));
}

void BM_Predictors(benchmark::State& state, Exec exec) {
  const Graph& g = cubic(static_cast<std::size_t>(state.range(0)));
  const int R = static_cast<int>(state.range(1));
  const EdgeMask mask = sample(g, 0.75, 3);
  const auto comps = components(g, mask);
  const auto core = two_core(g, mask, comps);
  for (auto _ : state) benchmark::DoNotOptimize(local_predictors(g, mask, R, comps, core, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}

void BM_MonteCarloSerial(benchmark::State& state) {
  const Graph& g = cubic(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_serial(g, 0.75, 8, 1, {}));
}

void BM_MonteCarloParallel(benchmark::State& state) {
  const Graph& g = cubic(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo(g, 0.75, 8, 1, {}));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Sample, serial, Exec::serial)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sample, parallel, Exec::parallel)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Components)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwoCore)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Predictors, serial, Exec::serial)->Args({100000, 10})->Args({100000, 50})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Predictors, parallel, Exec::parallel)->Args({100000, 10})->Args({100000, 50})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
