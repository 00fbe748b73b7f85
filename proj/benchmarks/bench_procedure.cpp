#include <benchmark/benchmark.h>

#include "girthlab/certificates.hpp"
#include "girthlab/graph.hpp"
#include "girthlab/odd_girth.hpp"
#include "girthlab/procedure.hpp"

using namespace girthlab;

static void BM_FirstRound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CubicGraph g = generate_random_cubic(n, 5);
  Rng rng(11);
  for (auto _ : state) {
    ColorState s = first_round(g, 0.05, rng);
    benchmark::DoNotOptimize(s.reds);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_FirstRound)->Range(1 << 10, 1 << 16)->Complexity();

static void BM_ClassifyPaths(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CubicGraph g = generate_random_cubic(n, 5);
  Rng rng(11);
  const ColorState s = first_round(g, 0.05, rng);
  for (auto _ : state) {
    auto paths = classify_paths(g, s);
    benchmark::DoNotOptimize(paths.size());
  }
}
BENCHMARK(BM_ClassifyPaths)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMicrosecond);

static void BM_RunProcedure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CubicGraph g = generate_random_cubic(n, 5);
  SimParams params;
  params.p1 = 0.05;
  params.p2 = 0.1;
  params.rounds = 20;
  uint64_t seed = 1;
  for (auto _ : state) {
    Rng rng(seed++);
    SimResult r = run_procedure(g, params, rng);
    benchmark::DoNotOptimize(r.state.reds);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_RunProcedure)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMicrosecond)->Complexity();

static void BM_DrawIndependentSet(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  CubicGraph g = generate_random_cubic(n, 5);
  g = boost_girth(g, 7, 2000000, 6).graph;
  const TwoFactor tf = find_two_factor(g);
  Rng rng(11);
  for (auto _ : state) {
    auto set = draw_independent_set(g, tf, 5, rng);
    benchmark::DoNotOptimize(set.size());
  }
}
BENCHMARK(BM_DrawIndependentSet)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMicrosecond);

static void BM_MonteCarloCoverage(benchmark::State& state) {
  const CubicGraph g = named_graph("mcgee");
  SimParams params;
  params.p1 = 0.2;
  params.p2 = 0.3;
  params.rounds = 50;
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    CoverageReport rep = monte_carlo_coverage(g, params, 2000, 3, workers);
    benchmark::DoNotOptimize(rep.min_frequency);
  }
}
BENCHMARK(BM_MonteCarloCoverage)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
