#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "girthlab/graph.hpp"
#include "girthlab/procedure.hpp"

namespace girthlab {

// Per-vertex inclusion statistics of a random independent-set distribution,
// estimated over repeated draws.
struct CoverageReport {
  long trials = 0;
  std::vector<double> frequency;  // red-inclusion frequency per vertex
  std::vector<double> radius99;   // 99% binomial confidence radius per vertex
  double min_frequency = 0;
  int argmin = -1;  // vertex attaining the minimum
  double mean_frequency = 0;
};

// Builds a report from raw per-vertex inclusion counts. The confidence radius
// is the 99% normal approximation z * sqrt(f(1-f)/T); at the degenerate
// frequencies 0 and 1 the radius floor 1/T keeps it honest.
CoverageReport coverage_from_counts(std::span<const long> counts, long trials);

// Runs the full procedure `trials` times with seeds seed, seed+1, ... and
// counts per-vertex red membership. Trials run on `workers` threads (0 picks
// the hardware concurrency); the counts are integers, so the result is
// identical for every worker count.
CoverageReport monte_carlo_coverage(const CubicGraph& g, const SimParams& params, long trials,
                                    uint64_t seed, int workers = 1);

// Upper bound on the fractional chromatic number implied by a coverage
// distribution: weighting each drawn independent set by 1/coverage covers
// every vertex, so c_f <= 1/(min coverage). The reported bound subtracts the
// confidence radius first, making it statistically conservative.
struct FractionalBound {
  double upper_bound = 0;
  CoverageReport report;
};

// Throws PreconditionError when min frequency minus its radius is not
// positive (the sample cannot support any finite bound).
FractionalBound fractional_upper_bound(CoverageReport report);

struct IndependentSetResult {
  int size = 0;
  std::vector<int> vertices;  // sorted witness
};

// Exact maximum independent set by branch and bound over bitmasks
// (degree-one vertices are forced, branching on a maximum-degree vertex,
// candidate-count bound). Capped at n <= 64.
IndependentSetResult exact_max_independent_set(const CubicGraph& g);

struct CutResult {
  long cut_size = 0;
  std::vector<char> side;  // side[v] == 1 for the independent-set / first part
};

// The cut (I, V \ I) induced by an independent set: every edge at a vertex of
// I crosses, so the cut has size sum of deg(v) over I — 3|I| on cubic graphs.
// Throws PreconditionError (naming a violating edge) if I is not independent.
CutResult cut_from_independent_set(const CubicGraph& g, std::span<const int> independent_set);

// Exact maximum cut by enumerating bipartitions. Capped at n <= 24.
CutResult exact_max_cut(const CubicGraph& g);

}  // namespace girthlab
