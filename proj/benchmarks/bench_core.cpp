#include <benchmark/benchmark.h>

#include "halftree/forests.hpp"
#include "halftree/graph.hpp"
#include "halftree/opening.hpp"
#include "halftree/skew_matrix.hpp"

namespace {

using namespace halftree;

void BM_pfaffian_pairings(benchmark::State& state) {
  const SkewMatrix m = random_skew(static_cast<int>(state.range(0)), 11, 9);
  for (auto _ : state) benchmark::DoNotOptimize(pfaffian_by_pairings(m));
}
BENCHMARK(BM_pfaffian_pairings)->DenseRange(4, 10, 2);

void BM_pfaffian_elimination(benchmark::State& state) {
  const SkewMatrix m = random_skew(static_cast<int>(state.range(0)), 11, 9);
  for (auto _ : state) benchmark::DoNotOptimize(pfaffian_by_elimination(m));
}
BENCHMARK(BM_pfaffian_elimination)->DenseRange(4, 16, 4);

void BM_forest_enumeration(benchmark::State& state) {
  InstanceSpec spec;
  spec.n = static_cast<int>(state.range(0));
  spec.r = 1;
  spec.seed = 5;
  const RootedGraph g = graph_from_matrix(random_instance(spec));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_spanning_forests(g).size());
}
BENCHMARK(BM_forest_enumeration)->DenseRange(2, 6, 2);

void BM_complete_opening(benchmark::State& state) {
  InstanceSpec spec;
  spec.n = static_cast<int>(state.range(0));
  spec.r = 1;
  spec.seed = 5;
  const RootedGraph g = graph_from_matrix(random_instance(spec));
  const auto matchings = enumerate_perfect_matchings(g);
  for (auto _ : state) {
    for (const auto& m : matchings)
      benchmark::DoNotOptimize(run_complete(matchings.front(), m, g).items.size());
  }
}
BENCHMARK(BM_complete_opening)->DenseRange(4, 6, 2);

}  // namespace

BENCHMARK_MAIN();
