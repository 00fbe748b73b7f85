#include <benchmark/benchmark.h>

#include "girthlab/graph.hpp"

using namespace girthlab;

static void BM_GenerateRandomCubic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  uint64_t seed = 1;
  for (auto _ : state) {
    CubicGraph g = generate_random_cubic(n, seed++);
    benchmark::DoNotOptimize(g.vertex_count());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_GenerateRandomCubic)->Range(1 << 10, 1 << 16)->Complexity();

static void BM_Girth(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CubicGraph g = generate_random_cubic(n, 7);
  for (auto _ : state) {
    GirthReport report = girth(g);
    benchmark::DoNotOptimize(report.girth);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Girth)->Range(1 << 10, 1 << 16)->Complexity();

static void BM_ShortCycles(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CubicGraph g = generate_random_cubic(n, 7);
  for (auto _ : state) {
    auto cycles = short_cycles(g, 8);
    benchmark::DoNotOptimize(cycles.size());
  }
}
BENCHMARK(BM_ShortCycles)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMicrosecond);

static void BM_BoostGirth(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CubicGraph g = generate_random_cubic(n, 7);
  for (auto _ : state) {
    BoostResult r = boost_girth(g, 8, 1000000, 9);
    benchmark::DoNotOptimize(r.achieved_girth);
  }
}
BENCHMARK(BM_BoostGirth)->Arg(1 << 10)->Arg(1 << 12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
