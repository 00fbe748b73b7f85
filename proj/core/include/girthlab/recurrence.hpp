#pragma once

#include <array>
#include <span>
#include <vector>

#include "girthlab/errors.hpp"

namespace girthlab {

// Parameters shared by the tree recurrence and the finite-graph simulator.
struct Params {
  double p1 = 1e-5;  // first-round activation probability
  double p2 = 1e-5;  // per-round activation probability of degree-two vertices
  double white_threshold = 1e-6;  // solve() stops once the white mass is at or below this
  int max_rounds = 1000000;       // hard cap on the number of rounds
  // Neumaier-compensated accumulation in the degree-distribution updates.
  // Off by default; useful to confirm that the plain binary64 sums already
  // carry all reported digits.
  bool compensated_sums = false;
};

// Color and degree distributions after k rounds on the infinite cubic tree.
//
// "Degree" of a white vertex always means its number of white neighbors.
// wdeg[i] is the probability that a white vertex has degree i. qdeg[i-1]
// conditions on one endpoint of an edge between two white vertices and gives
// the degree distribution (1..3) of the other endpoint.
struct RoundState {
  int k = 0;
  double white = 1.0;
  double blue = 0.0;
  double red = 0.0;
  std::array<double, 4> wdeg{};
  std::array<double, 3> qdeg{};

  double q(int degree) const { return qdeg[degree - 1]; }
};

// Probabilities describing the maximal white path seen from a white vertex
// along one white edge, derived from qdeg and the activation probability p2.
//
// Naming: *_to_one / *_to_three give the degree of the far endpoint;
// odd_ / even_ fix the parity of the path length; the inactive_ variants
// additionally require that no inner vertex of the path is activated, the
// active_ variants that at least one is. Unprefixed and parity-only entries
// ignore activation.
struct PathStats {
  double to_one = 0;
  double odd_to_one = 0;
  double even_to_one = 0;
  double to_three = 0;
  double odd_to_three = 0;
  double even_to_three = 0;
  double inactive_to_three = 0;
  double inactive_odd_to_three = 0;
  double inactive_even_to_three = 0;
  double active_odd_to_three = 0;
  double active_even_to_three = 0;
};

// Per-degree recoloring probabilities of a white vertex in one round.
// Indexed by the vertex's white degree 0..3. Degree-zero vertices always
// turn red; degree-three vertices never turn red.
struct RecolorProbs {
  std::array<double, 4> to_red{};
  std::array<double, 4> to_blue{};
};

// Survival probabilities along an edge between two white vertices.
// survive_ij = Pr[the degree-j endpoint stays white | the degree-i endpoint
// stays white]. survive_22 is exactly 1 (both lie on one inactive path) and
// survive_23 equals survive_33 (the same two branch events for the degree-3
// endpoint).
struct SurvivalProbs {
  double survive_22 = 1.0;
  double survive_23 = 0.0;
  double survive_33 = 0.0;
  double survive_32 = 0.0;
  // Probability that one degree-two branch hanging off a degree-three white
  // vertex does not recolor it; also the conditioning mass of survive_32.
  double deg3_branch_stay = 0.0;
};

// One row of the degree-transition tables.
struct DegreeTransition {
  double stay_white = 0.0;              // probability the vertex stays white
  std::array<double, 4> next_degree{};  // new-degree distribution given white
};

// Stay-white probabilities and new-degree distributions for a white vertex of
// degree 2 or 3 whose white neighbors have degree vector J over {2,3}^degree.
//
// vertex2/vertex3 condition on the center vertex alone. edge2/edge3 also
// condition on the first (distinguished) entry of J staying white, and count
// that neighbor in the new degree, so their next_degree starts at 1.
//
// Table index: bit b of the pattern is set iff J[b] == 3.
struct TransitionTables {
  std::array<DegreeTransition, 4> vertex2;
  std::array<DegreeTransition, 8> vertex3;
  std::array<DegreeTransition, 4> edge2;
  std::array<DegreeTransition, 8> edge3;

  // Lookup by explicit degree vector with entries in {1,2,3}. Any J that
  // contains a degree-1 entry yields stay_white == 0: such a neighbor is
  // always recolored, which recolors the center vertex as well.
  DegreeTransition vertex(int center_degree, std::span<const int> J) const;
  DegreeTransition edge(int center_degree, std::span<const int> J) const;
};

// Closed-form state after the first round.
RoundState init_first_round(const Params& params);

// Path statistics for the round k+1 given the state after round k.
// Throws DegeneracyError if qdeg[1] >= 1 (the geometric series diverge).
PathStats path_probabilities(const RoundState& state, double p2);

RecolorProbs recolor_probabilities(const PathStats& stats, double p2);

// Throws DegeneracyError if the degree-three branch mass vanishes.
SurvivalProbs survival_probs(const PathStats& stats, double p2);

TransitionTables transition_tables(const PathStats& stats, const SurvivalProbs& sv, double p2);

// One full update: recoloring masses, then the two degree distributions.
// Throws DegeneracyError when an update denominator vanishes.
RoundState next_round(const RoundState& state, const Params& params);

enum class StopReason { white_below_threshold, max_rounds };

struct Trace {
  Params params;
  std::vector<RoundState> rounds;  // rounds[i] holds round k = i + 1
  StopReason stop = StopReason::max_rounds;

  const RoundState& final_state() const { return rounds.back(); }
  bool converged() const { return stop == StopReason::white_below_threshold; }
};

// Runs the recurrence from round 1 until the white mass drops to
// white_threshold or max_rounds rounds have been computed.
Trace solve(const Params& params);

}  // namespace girthlab
