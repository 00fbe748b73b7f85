#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "girthlab/certificates.hpp"
#include "girthlab/graph.hpp"
#include "girthlab/rng.hpp"

namespace girthlab {

// Spanning cycle cover of a cubic graph together with the complementary
// perfect matching: F uses two of each vertex's three edges, M the third.
struct TwoFactor {
  std::vector<std::vector<int>> cycles;       // vertex-disjoint, cover all vertices
  std::vector<std::pair<int, int>> matching;  // perfect matching, pairs u < v, sorted
};

// Finds a perfect matching by backtracking (it exists in every bridgeless
// cubic graph) and returns its complement decomposed into cycles.
// Preconditions: cubic, bridgeless (a bridge is reported in the error),
// n <= 200.
TwoFactor find_two_factor(const CubicGraph& g);

// One draw of the odd-girth independent-set construction on a graph with odd
// girth at least g_odd (g_odd odd, >= 5), given its two-factor F:
//   1. pick k uniformly among the m = (g_odd+1)/2 position classes and let W
//      hold the vertices at positions congruent to k on their F-cycle, so
//      every vertex lands in W with probability exactly 2/(g_odd+1);
//   2. split F minus W into components; each spans fewer than g_odd vertices
//      of its cycle (or a whole short even cycle), so the induced subgraph is
//      bipartite — two-color it and color a fair-coin-chosen class red;
//   3. for every matching edge with both ends red, uncolor a fair-coin-chosen
//      endpoint.
// The returned sorted red set is verified independent before returning.
// Validates the two-factor and the odd-girth precondition on every call.
std::vector<int> draw_independent_set(const CubicGraph& g, const TwoFactor& two_factor,
                                      int g_odd, Rng& rng);

// The guarantees of the construction at odd girth g_odd: every vertex is
// covered with probability at least 3*(1 - 2/(g_odd+1))/8, hence the
// fractional chromatic number is at most 8/(3 - 6/(g_odd+1)).
struct OddGirthBound {
  double coverage = 0;
  double fractional = 0;
};

OddGirthBound odd_girth_bound(int g_odd);

// Monte Carlo per-vertex coverage of draw_independent_set over `trials`
// draws with seeds seed, seed+1, ...; inputs are validated once up front.
CoverageReport odd_girth_coverage(const CubicGraph& g, const TwoFactor& two_factor, int g_odd,
                                  long trials, uint64_t seed, int workers = 1);

}  // namespace girthlab
