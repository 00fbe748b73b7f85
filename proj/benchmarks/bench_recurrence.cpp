#include <benchmark/benchmark.h>

#include "girthlab/recurrence.hpp"

using namespace girthlab;

static void BM_InitFirstRound(benchmark::State& state) {
  Params params;
  params.p1 = 1e-3;
  params.p2 = 1e-3;
  for (auto _ : state) {
    RoundState s = init_first_round(params);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_InitFirstRound);

static void BM_NextRound(benchmark::State& state) {
  Params params;
  params.p1 = 1e-3;
  params.p2 = 1e-3;
  const RoundState first = init_first_round(params);
  for (auto _ : state) {
    RoundState s = next_round(first, params);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_NextRound);

static void BM_TransitionTables(benchmark::State& state) {
  Params params;
  params.p1 = 1e-3;
  params.p2 = 1e-3;
  const RoundState first = init_first_round(params);
  const PathStats stats = path_probabilities(first, params.p2);
  const SurvivalProbs sv = survival_probs(stats, params.p2);
  for (auto _ : state) {
    TransitionTables t = transition_tables(stats, sv, params.p2);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_TransitionTables);

// Full runs to the default white threshold; the round count grows roughly
// like 1/(p1*p2), so the two arguments differ by about 100x in work.
static void BM_SolveFull(benchmark::State& state) {
  Params params;
  params.p1 = state.range(0) == 0 ? 1e-2 : 1e-3;
  params.p2 = params.p1;
  for (auto _ : state) {
    Trace trace = solve(params);
    benchmark::DoNotOptimize(trace.rounds.data());
  }
  Params again = params;
  state.SetLabel(std::to_string(solve(again).rounds.size()) + " rounds");
}
BENCHMARK(BM_SolveFull)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
