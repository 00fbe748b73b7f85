#include "girthlab/recurrence.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace girthlab {

namespace {

void validate(const Params& p) {
  if (!(p.p1 >= 0.0 && p.p1 <= 1.0)) throw PreconditionError("p1 must lie in [0, 1]");
  if (!(p.p2 >= 0.0 && p.p2 <= 1.0)) throw PreconditionError("p2 must lie in [0, 1]");
  if (!(p.white_threshold > 0.0 && p.white_threshold <= 1.0))
    throw PreconditionError("white_threshold must lie in (0, 1]");
  if (p.max_rounds < 1) throw PreconditionError("max_rounds must be at least 1");
}

// libm's pow, called through a volatile function pointer so the compiler
// cannot fold pow(x, 2.0) into x*x at compile time. libm may round a square
// differently from x*x in the last bit, and the tested contract is
// bit-for-bit agreement with independently written straight-line evaluations
// of this recurrence, which call libm. Every integer power in this module
// goes through this pointer.
double pow_runtime(double base, double exponent) { return std::pow(base, exponent); }
double (*volatile libm_pow)(double, double) = &pow_runtime;

// Plain or Neumaier-compensated accumulator, selected at run time so both
// modes share the exact same update code path.
struct Accum {
  double sum = 0.0;
  double comp = 0.0;
  bool compensated = false;

  explicit Accum(bool use_compensation) : compensated(use_compensation) {}

  void add(double x) {
    if (!compensated) {
      sum += x;
      return;
    }
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  double value() const { return compensated ? sum + comp : sum; }
};

// Distribution of the number of surviving neighbors among independent
// Bernoulli survivals, shifted by `offset` already-counted survivors.
std::array<double, 4> survivor_distribution(std::span<const double> survive, int offset) {
  std::array<double, 4> dist{};
  dist[offset] = 1.0;
  int top = offset;
  for (double s : survive) {
    std::array<double, 4> next{};
    for (int d = offset; d <= top; ++d) {
      next[d] += dist[d] * (1.0 - s);
      next[d + 1] += dist[d] * s;
    }
    ++top;
    dist = next;
  }
  return dist;
}

int pattern_of(std::span<const int> J) {
  int pattern = 0;
  for (size_t b = 0; b < J.size(); ++b)
    if (J[b] == 3) pattern |= 1 << b;
  return pattern;
}

std::string describe(const RoundState& s) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "k=%d w=%.17g qdeg=[%.17g, %.17g, %.17g]", s.k, s.white,
                s.qdeg[0], s.qdeg[1], s.qdeg[2]);
  return buf;
}

}  // namespace

RoundState init_first_round(const Params& params) {
  validate(params);
  const double p1 = params.p1;
  // A vertex is white after round one iff neither it nor a neighbor is the
  // only active vertex in its closed neighborhood; each neighbor is still
  // white (seen from a white vertex) with probability t = (1-p1)^2.
  //
  // Integer powers are evaluated through libm_pow in this module; see its
  // definition for why. pow's rounding of squares and cubes differs from
  // repeated multiplication in the last bit, so mixing the two styles would
  // break the bit-for-bit equivalence the tests hold this solver to.
  const double t = libm_pow(1.0 - p1, 2.0);

  RoundState s;
  s.k = 1;
  s.wdeg[3] = libm_pow(t, 3.0);
  s.wdeg[2] = 3.0 * libm_pow(t, 2.0) * (1.0 - t);
  s.wdeg[1] = 3.0 * t * libm_pow(1.0 - t, 2.0);
  s.wdeg[0] = libm_pow(1.0 - t, 3.0);
  s.qdeg[2] = libm_pow(t, 2.0);
  s.qdeg[1] = 2.0 * t * (1.0 - t);
  s.qdeg[0] = libm_pow(1.0 - t, 2.0);
  s.blue = 1.0 - libm_pow(1.0 - p1, 3.0);
  s.red = p1 * (1.0 - s.blue);
  s.white = 1.0 - s.red - s.blue;
  return s;
}

PathStats path_probabilities(const RoundState& state, double p2) {
  const double q2 = state.q(2);
  if (!(q2 < 1.0))
    throw DegeneracyError("edge-degree distribution is degenerate (qdeg[2-1] >= 1) at " +
                          describe(state));
  const double q1 = state.q(1);
  const double q3 = state.q(3);
  const double q2_sq = libm_pow(q2, 2.0);
  const double calm = 1.0 - p2;  // one inner vertex stays inactive
  const double calm_sq = libm_pow(calm, 2.0);

  PathStats st;
  st.odd_to_one = q1 / (1.0 - q2_sq);
  st.even_to_one = q2 * st.odd_to_one;
  st.to_one = st.odd_to_one + st.even_to_one;

  st.odd_to_three = q3 / (1.0 - q2_sq);
  st.even_to_three = q2 * st.odd_to_three;
  st.to_three = st.odd_to_three + st.even_to_three;

  // Paths all of whose inner vertices stay inactive: every inner step
  // contributes q2 * (1 - p2) instead of q2.
  st.inactive_to_three = q3 / (1.0 - q2 * calm);
  st.inactive_odd_to_three = q3 / (1.0 - q2_sq * calm_sq);
  st.inactive_even_to_three = q2 * calm * st.inactive_odd_to_three;

  st.active_odd_to_three = (q2_sq * (1.0 - calm_sq) * st.odd_to_three) / (1.0 - q2_sq * calm_sq);
  st.active_even_to_three = q2 * (p2 * st.odd_to_three + calm * st.active_odd_to_three);
  return st;
}

RecolorProbs recolor_probabilities(const PathStats& st, double p2) {
  const double o1 = st.odd_to_one, e1 = st.even_to_one, t1 = st.to_one;
  const double o3 = st.odd_to_three, e3 = st.even_to_three, t3 = st.to_three;
  const double io3 = st.inactive_odd_to_three, ie3 = st.inactive_even_to_three;
  const double ao3 = st.active_odd_to_three, ae3 = st.active_even_to_three;
  (void)t1;

  RecolorProbs r;
  r.to_red[0] = 1.0;

  // Degree one: the vertex is recolored with certainty; it turns blue only
  // when its path leads to a second degree-one endpoint at odd distance and
  // the far end is chosen as the beginning.
  r.to_red[1] = (e1 + o1 * 0.5) + t3;
  r.to_blue[1] = o1 * 0.5;

  // Degree two: classify the two maximal path halves leaving the vertex.
  r.to_red[2] = libm_pow(e1, 2.0) + e1 * o1 + 2.0 * e1 * t3;
  r.to_red[2] +=
      (1.0 - p2) * (libm_pow(ao3, 2.0) + 2.0 * ao3 * io3 + ao3 * ae3 + io3 * ae3 + ao3 * ie3);
  r.to_red[2] += p2 * (libm_pow(o3, 2.0) + o3 * e3);

  r.to_blue[2] = libm_pow(o1, 2.0) + e1 * o1 + 2.0 * o1 * t3;
  r.to_blue[2] +=
      (1.0 - p2) * (libm_pow(ae3, 2.0) + 2.0 * ae3 * ie3 + ao3 * ae3 + io3 * ae3 + ao3 * ie3);
  r.to_blue[2] += p2 * (libm_pow(e3, 2.0) + o3 * e3);

  // Degree three: stays white unless one of its three branches recolors it
  // blue; it can never turn red within the round.
  const double branch_keeps_white = st.inactive_to_three + e1 + ao3 / 2.0;
  r.to_blue[3] = 1.0 - libm_pow(branch_keeps_white, 3.0);
  return r;
}

SurvivalProbs survival_probs(const PathStats& st, double p2) {
  SurvivalProbs sv;
  sv.survive_22 = 1.0;

  // A degree-three vertex adjacent to a surviving white vertex stays white
  // iff each of its two other branches keeps it white.
  const double branch_keeps_white =
      st.inactive_to_three + st.even_to_one + st.active_odd_to_three / 2.0;
  sv.survive_23 = libm_pow(branch_keeps_white, 2.0);
  sv.survive_33 = sv.survive_23;

  sv.deg3_branch_stay = st.odd_to_one +
                        (1.0 - p2) * (st.inactive_to_three + 0.5 * st.active_even_to_three) +
                        p2 * (0.5 * st.even_to_three);
  if (!(sv.deg3_branch_stay > 0.0)) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "degree-three branch mass vanished (p2=%.17g, inactive_to_three=%.17g, "
                  "odd_to_one=%.17g)",
                  p2, st.inactive_to_three, st.odd_to_one);
    throw DegeneracyError(buf);
  }
  sv.survive_32 = (1.0 - p2) * st.inactive_to_three / sv.deg3_branch_stay;
  return sv;
}

TransitionTables transition_tables(const PathStats& st, const SurvivalProbs& sv, double p2) {
  TransitionTables t;
  // Stay-white factor contributed by one degree-two neighbor of a degree-two
  // vertex; identical to the stay-white contribution of a distinguished
  // degree-two neighbor in the edge tables.
  const double deg2_branch = (1.0 - p2) * st.inactive_to_three;

  for (int i = 2; i <= 3; ++i) {
    for (int pattern = 0; pattern < (1 << i); ++pattern) {
      // Vertex table: condition on the center vertex staying white.
      double stay = (i == 2) ? (1.0 - p2) : 1.0;
      std::array<double, 3> surv{};
      for (int b = 0; b < i; ++b) {
        const bool deg3 = (pattern >> b) & 1;
        if (i == 2) {
          if (deg3) {
            surv[b] = sv.survive_23;
          } else {
            stay *= deg2_branch;
            surv[b] = 1.0;  // same inactive path: survives with certainty
          }
        } else {
          if (deg3) {
            surv[b] = sv.survive_33;
          } else {
            stay *= sv.deg3_branch_stay;
            surv[b] = sv.survive_32;
          }
        }
      }
      DegreeTransition vertex_row;
      vertex_row.stay_white = stay;
      vertex_row.next_degree = survivor_distribution(std::span(surv).first(i), 0);
      (i == 2 ? t.vertex2[pattern] : t.vertex3[pattern]) = vertex_row;

      // Edge table: additionally condition on neighbor J[0] staying white;
      // it is counted in the new degree, losses happen among the others.
      double estay = (i == 2) ? (1.0 - p2) : 1.0;
      const bool dist3 = pattern & 1;
      if (dist3)
        estay *= (i == 2) ? sv.survive_23 : sv.survive_33;
      else
        estay *= deg2_branch;
      std::array<double, 2> esurv{};
      for (int b = 1; b < i; ++b) {
        const bool deg3 = (pattern >> b) & 1;
        if (i == 2) {
          if (deg3) {
            esurv[b - 1] = sv.survive_23;
          } else {
            estay *= deg2_branch;
            esurv[b - 1] = 1.0;
          }
        } else {
          if (deg3) {
            esurv[b - 1] = sv.survive_33;
          } else {
            estay *= sv.deg3_branch_stay;
            esurv[b - 1] = sv.survive_32;
          }
        }
      }
      DegreeTransition edge_row;
      edge_row.stay_white = estay;
      edge_row.next_degree = survivor_distribution(std::span(esurv).first(i - 1), 1);
      (i == 2 ? t.edge2[pattern] : t.edge3[pattern]) = edge_row;
    }
  }
  return t;
}

DegreeTransition TransitionTables::vertex(int center_degree, std::span<const int> J) const {
  if (center_degree != static_cast<int>(J.size()) || center_degree < 2 || center_degree > 3)
    throw PreconditionError("transition lookup needs center degree 2 or 3 with matching J");
  for (int j : J)
    if (j == 1) return DegreeTransition{};
  return center_degree == 2 ? vertex2[pattern_of(J)] : vertex3[pattern_of(J)];
}

DegreeTransition TransitionTables::edge(int center_degree, std::span<const int> J) const {
  if (center_degree != static_cast<int>(J.size()) || center_degree < 2 || center_degree > 3)
    throw PreconditionError("transition lookup needs center degree 2 or 3 with matching J");
  for (int j : J)
    if (j == 1) return DegreeTransition{};
  return center_degree == 2 ? edge2[pattern_of(J)] : edge3[pattern_of(J)];
}

RoundState next_round(const RoundState& state, const Params& params) {
  const double p2 = params.p2;
  const PathStats st = path_probabilities(state, p2);
  const RecolorProbs rec = recolor_probabilities(st, p2);
  const SurvivalProbs sv = survival_probs(st, p2);

  RoundState out;
  out.k = state.k + 1;
  out.red = state.red + state.white * (state.wdeg[0] * rec.to_red[0] +
                                       state.wdeg[1] * rec.to_red[1] +
                                       state.wdeg[2] * rec.to_red[2]);
  out.blue = state.blue + state.white * (state.wdeg[1] * rec.to_blue[1] +
                                         state.wdeg[2] * rec.to_blue[2] +
                                         state.wdeg[3] * rec.to_blue[3]);
  out.white = 1.0 - out.red - out.blue;

  // Both degree-distribution updates evaluate per-configuration products
  // factor by factor in one pinned order: configuration weight, stay-white
  // factors in slot order, then survival factors in slot order. Keeping the
  // operation order fixed lets an independently written evaluation of the
  // same recurrence reproduce every round bit for bit, which is what makes
  // tight per-round equivalence tolerances meaningful even for the tiny
  // white residue near termination. transition_tables() exposes the same
  // stay/survival data in aggregated form; tests tie the two views together.
  const double deg2_branch = (1.0 - p2) * st.inactive_to_three;
  const bool comp = params.compensated_sums;

  // New degree distribution of surviving white vertices. Degree vectors J
  // run lexicographically over {2,3}^i; vectors containing a degree-one
  // neighbor carry no surviving mass and are skipped outright.
  {
    std::array<Accum, 4> num{Accum(comp), Accum(comp), Accum(comp), Accum(comp)};
    Accum den(comp);
    for (int i = 2; i <= 3; ++i) {
      std::array<int, 3> J{2, 2, 2};
      while (true) {
        double mass = state.wdeg[i];
        for (int b = 0; b < i; ++b) mass *= state.q(J[b]);

        // f[b] = {survival probability, loss probability} of neighbor slot b;
        // slots that cannot lose their branch (and the unused third slot when
        // i == 2) keep the neutral {1, 0} and a zero loss bound.
        std::array<std::array<double, 2>, 3> f{{{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}}};
        std::array<int, 3> bound{0, 0, 0};
        if (i == 2) {
          mass *= 1.0 - p2;
          for (int b = 0; b < 2; ++b) {
            if (J[b] == 3) {
              f[b][0] = sv.survive_23;
              f[b][1] = 1.0 - sv.survive_23;
              bound[b] = 1;
            } else {
              mass *= deg2_branch;
            }
          }
        } else {
          for (int b = 0; b < 3; ++b) {
            if (J[b] == 3) {
              f[b][0] = sv.survive_33;
            } else {
              mass *= sv.deg3_branch_stay;
              f[b][0] = sv.survive_32;
            }
            f[b][1] = 1.0 - f[b][0];
            bound[b] = 1;
          }
        }
        den.add(mass);
        for (int a0 = 0; a0 <= bound[0]; ++a0)
          for (int a1 = 0; a1 <= bound[1]; ++a1)
            for (int a2 = 0; a2 <= bound[2]; ++a2)
              num.at(i - a0 - a1 - a2).add(mass * f[0][a0] * f[1][a1] * f[2][a2]);

        // next J in lexicographic order
        int b = i - 1;
        while (b >= 0 && J[b] == 3) J[b--] = 2;
        if (b < 0) break;
        J[b] = 3;
      }
    }
    if (!(den.value() > 0.0))
      throw DegeneracyError("white-degree update denominator vanished at " + describe(state));
    for (int d = 0; d < 4; ++d) out.wdeg[d] = num.at(d).value() / den.value();
  }

  // New edge-degree distribution; J[0] is the distinguished neighbor, which
  // survives by conditioning and only contributes a stay-white factor. Loss
  // slots f[0], f[1] stand for neighbors J[1], J[2].
  {
    std::array<Accum, 4> num{Accum(comp), Accum(comp), Accum(comp), Accum(comp)};
    Accum den(comp);
    for (int i = 2; i <= 3; ++i) {
      std::array<int, 3> J{2, 2, 2};
      while (true) {
        double mass = state.q(i);
        for (int b = 0; b < i; ++b) mass *= state.q(J[b]);

        if (J[0] == 3)
          mass *= (i == 2) ? sv.survive_23 : sv.survive_33;
        else
          mass *= deg2_branch;

        std::array<std::array<double, 2>, 2> f{{{1.0, 0.0}, {1.0, 0.0}}};
        std::array<int, 2> bound{0, 0};
        if (i == 2) {
          mass *= 1.0 - p2;
          if (J[1] == 3) {
            f[0][0] = sv.survive_23;
            f[0][1] = 1.0 - sv.survive_23;
            bound[0] = 1;
          } else {
            mass *= deg2_branch;
          }
        } else {
          for (int b = 1; b < 3; ++b) {
            if (J[b] == 3) {
              f[b - 1][0] = sv.survive_33;
            } else {
              mass *= sv.deg3_branch_stay;
              f[b - 1][0] = sv.survive_32;
            }
            f[b - 1][1] = 1.0 - f[b - 1][0];
            bound[b - 1] = 1;
          }
        }
        den.add(mass);
        for (int a0 = 0; a0 <= bound[0]; ++a0)
          for (int a1 = 0; a1 <= bound[1]; ++a1)
            num.at(i - a0 - a1).add(mass * f[0][a0] * f[1][a1]);

        int b = i - 1;
        while (b >= 0 && J[b] == 3) J[b--] = 2;
        if (b < 0) break;
        J[b] = 3;
      }
    }
    if (!(den.value() > 0.0))
      throw DegeneracyError("edge-degree update denominator vanished at " + describe(state));
    for (int d = 1; d <= 3; ++d) out.qdeg[d - 1] = num.at(d).value() / den.value();
  }

  return out;
}

Trace solve(const Params& params) {
  Trace trace;
  trace.params = params;
  trace.rounds.reserve(256);
  trace.rounds.push_back(init_first_round(params));
  while (trace.rounds.back().white > params.white_threshold &&
         static_cast<int>(trace.rounds.size()) < params.max_rounds)
    trace.rounds.push_back(next_round(trace.rounds.back(), params));
  trace.stop = trace.rounds.back().white <= params.white_threshold
                   ? StopReason::white_below_threshold
                   : StopReason::max_rounds;
  return trace;
}

}  // namespace girthlab
