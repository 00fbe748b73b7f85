#pragma once

#include <vector>

#include "girthlab/graph.hpp"
#include "girthlab/rng.hpp"

namespace girthlab {

enum class Color : unsigned char { white, blue, red };

// Coloring state of one simulation run. Red vertices form an independent set
// after every round and are never recolored; every neighbor of a red vertex
// is blue; white vertices are still undecided.
struct ColorState {
  std::vector<Color> color;
  std::vector<int> white_degree;  // number of white neighbors, kept for every vertex
  int round = 0;                  // completed rounds
  long whites = 0;
  long blues = 0;
  long reds = 0;
};

enum class PathType : unsigned char { one_one, one_three, three_three, cycle };

// Maximal path of white vertices whose inner vertices have white-degree two,
// classified by the white-degrees of its endpoints (1 or 3). A white
// component in which every vertex has white-degree two is reported as a
// single cycle-type path. A three_three path may close on itself through one
// white-degree-3 vertex, in which case the sequence repeats that vertex at
// both ends.
struct WhitePath {
  PathType type;
  std::vector<int> vertices;  // one_three paths run from the degree-1 end
};

// Processing order of the classified paths within a round. Outcomes are
// identically distributed either way because per-path draws are independent;
// the reversed order exists to test exactly that.
enum class PathOrder : unsigned char { canonical, reversed };

// Round 1: every vertex activates independently with probability p1; an
// active vertex with no active neighbor turns red, every vertex with an
// active neighbor turns blue, the rest stay white.
ColorState first_round(const CubicGraph& g, double p1, Rng& rng);

// Decomposes the current white subgraph into maximal paths and all-degree-2
// cycles. Paths are returned in canonical order: sorted by their smallest
// endpoint, then lexicographically by vertex sequence; cycle sequences start
// at their smallest vertex in the direction of its smaller neighbor.
std::vector<WhitePath> classify_paths(const CubicGraph& g, const ColorState& state);

// One recoloring round computed from the start-of-round snapshot and applied
// simultaneously:
//   - white vertices of white-degree zero turn red;
//   - a 1-3 path is colored alternately red/blue from the degree-1 end, and
//     its degree-3 end turns blue when the path length is odd (otherwise the
//     degree-3 end is left white);
//   - a 1-1 path is colored alternately from a uniformly chosen end;
//   - a 3-3 path is active when at least one inner vertex activates (each
//     independently with probability p2); a fair coin picks its beginning,
//     which turns blue, followed by red/blue alternation, the far end turning
//     blue when the path length is even (otherwise left white);
//   - an all-degree-2 white cycle with at least one activated vertex is
//     colored alternately around from a uniformly chosen activated vertex,
//     which turns blue.
// Degree-3 endpoints never turn red, so blue writes may repeat across paths
// while red writes are unique; a violated red write or a red-red adjacency
// aborts via std::logic_error, since it can only mean an implementation bug.
void run_round(const CubicGraph& g, ColorState& state, double p2, Rng& rng,
               PathOrder order = PathOrder::canonical);

// Per-round summary matching the tree recurrence's quantities: color
// fractions, white-degree histogram over white vertices, and the white-degree
// histogram of an endpoint of a uniformly chosen ordered white-white edge.
struct RoundAggregates {
  int k = 0;
  double frac_white = 0, frac_blue = 0, frac_red = 0;
  double wdeg_hist[4] = {0, 0, 0, 0};
  double qdeg_hist[3] = {0, 0, 0};
};

RoundAggregates aggregate(const CubicGraph& g, const ColorState& state);

struct SimParams {
  double p1 = 0;
  double p2 = 0;
  int rounds = 1;  // maximum rounds including the first; stops early when no white
                   // remains or the white subgraph is 3-regular (frozen forever)
};

struct SimResult {
  ColorState state;
  std::vector<RoundAggregates> per_round;  // one entry per executed round
};

// Runs first_round followed by up to rounds-1 recoloring rounds.
SimResult run_procedure(const CubicGraph& g, const SimParams& params, Rng& rng);

}  // namespace girthlab
