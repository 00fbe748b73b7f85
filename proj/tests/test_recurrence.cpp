#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "doctest.h"
#include "girthlab/recurrence.hpp"
#include "reference_recurrence.hpp"

using namespace girthlab;

namespace {

// Frozen rows of the recurrence at the default parameters p1 = p2 = 1e-5,
// regenerated from an independent straight-line evaluation and written out
// at 17 significant digits.
struct AnchorRow {
  int k;
  double white, blue, red;
  std::array<double, 4> wdeg;
  std::array<double, 3> qdeg;
};

const AnchorRow kAnchors[] = {
    {1,
     0.99996000059999612, 2.9999700000837848e-05, 9.9997000029999927e-06,
     {7.9998800004808471e-15, 1.1999640003780833e-09, 5.999730004770172e-05,
      0.9999400014999803},
     {3.9999600000602821e-10, 3.9999000007801398e-05, 0.99996000059999623}},
    {2,
     0.9999599964003093, 3.0002099814741137e-05, 1.0001499876007847e-05,
     {1.5357797309200123e-22, 1.9198607233112539e-13, 6.000149957051674e-05,
      0.99993999850023763},
     {6.3996637408453937e-14, 4.0001799769673494e-05, 0.99995999820016646}},
    {3,
     0.99995999459995277, 3.0003299988290858e-05, 1.0002100058981825e-05,
     {3.8413732955394638e-23, 9.6019164786529565e-14, 6.0003299818612111e-05,
      0.99993999670008527},
     {3.2007028437953088e-14, 4.0002999983077789e-05, 0.99995999699998495}},
    {10,
     0.99995998199728475, 3.0011701543098995e-05, 1.0006301172142533e-05,
     {3.8431844325359923e-23, 9.6051882641968713e-14, 6.0015901731065983e-05,
      0.99993998409817308},
     {3.2017934742399925e-14, 4.001140159416187e-05, 0.99995998859837398}},
    {100,
     0.9999598197270001, 3.0119878844201441e-05, 1.0060394155696026e-05,
     {3.8744393185634045e-23, 9.6571948177680255e-14, 6.0178162271178467e-05,
      0.9999398218376323},
     {3.2191295130222741e-14, 4.0119579621645656e-05, 0.99995988042034611}},
    {1000,
     0.99995817269672993, 3.1217869260738527e-05, 1.0609434009284772e-05,
     {4.2013379970269798e-23, 1.0193029925668879e-13, 6.1825092634655424e-05,
      0.99993817490726333},
     {3.3977466638906114e-14, 4.1217577849962706e-05, 0.999958782422116}},
    {307449,
     3.7037159961172961e-07, 0.56479785645800207, 0.43520177317039838,
     {3.9117543114159926e-05, 0.0019203898393271601, 0.99770964032214737,
      0.00033085229541202408},
     {0.00096099628131140178, 0.99854231109038494, 0.00049669262830358057}},
};

double rel_err(double got, double want) {
  if (want == 0.0) return std::fabs(got);
  return std::fabs(got - want) / std::fabs(want);
}

void check_row(const RoundState& s, const AnchorRow& a, double tol) {
  CAPTURE(a.k);
  CHECK(s.k == a.k);
  CHECK(rel_err(s.white, a.white) <= tol);
  CHECK(rel_err(s.blue, a.blue) <= tol);
  CHECK(rel_err(s.red, a.red) <= tol);
  for (int i = 0; i < 4; ++i) {
    CAPTURE(i);
    CHECK(rel_err(s.wdeg[i], a.wdeg[i]) <= tol);
  }
  for (int i = 0; i < 3; ++i) {
    CAPTURE(i);
    CHECK(rel_err(s.qdeg[i], a.qdeg[i]) <= tol);
  }
}

}  // namespace

TEST_CASE("default run reproduces the frozen trajectory rows within 1e-9") {
  const Trace trace = solve(Params{});
  REQUIRE(trace.converged());
  REQUIRE(trace.rounds.size() == 307449);
  REQUIRE(trace.final_state().k == 307449);
  for (const AnchorRow& a : kAnchors) check_row(trace.rounds[a.k - 1], a, 1e-9);
}

TEST_CASE("first round matches the closed form at several p1") {
  for (double p1 : {1e-5, 1e-3, 0.1, 0.5, 0.9}) {
    CAPTURE(p1);
    Params params;
    params.p1 = p1;
    const RoundState s = init_first_round(params);
    const double t = (1.0 - p1) * (1.0 - p1);
    CHECK(s.k == 1);
    CHECK(rel_err(s.red, p1 * (1.0 - p1) * (1.0 - p1) * (1.0 - p1)) <= 1e-14);
    CHECK(rel_err(s.white + s.blue + s.red, 1.0) <= 1e-15);
    CHECK(rel_err(s.wdeg[3], t * t * t) <= 1e-15);
    CHECK(rel_err(s.wdeg[0] + s.wdeg[1] + s.wdeg[2] + s.wdeg[3], 1.0) <= 1e-14);
    CHECK(rel_err(s.qdeg[0] + s.qdeg[1] + s.qdeg[2], 1.0) <= 1e-14);
  }
}

TEST_CASE("library and straight-line reference agree bit for bit") {
  // Short full run at p1 = p2 = 1e-3 ...
  {
    Params params;
    params.p1 = 1e-3;
    params.p2 = 1e-3;
    const Trace trace = solve(params);
    const std::vector<reference::Row> ref =
        reference::run(params.p1, params.p2, params.white_threshold, params.max_rounds);
    REQUIRE(trace.rounds.size() == ref.size());
    for (size_t i = 0; i < ref.size(); ++i) {
      const RoundState& s = trace.rounds[i];
      const reference::Row& r = ref[i];
      CAPTURE(i);
      REQUIRE(s.k == r.k);
      CHECK(s.white == r.p_w);
      CHECK(s.blue == r.p_b);
      CHECK(s.red == r.p_r);
      for (int d = 0; d < 4; ++d) CHECK(s.wdeg[d] == r.w[d]);
      for (int d = 0; d < 3; ++d) CHECK(s.qdeg[d] == r.q[d]);
    }
  }
  // ... and a 2000-round prefix at the much slower default parameters.
  {
    Params params;  // p1 = p2 = 1e-5
    const std::vector<reference::Row> ref = reference::run(params.p1, params.p2, 0.0, 2000);
    REQUIRE(ref.size() == 2000);
    RoundState s = init_first_round(params);
    for (size_t i = 0; i < ref.size(); ++i) {
      const reference::Row& r = ref[i];
      CAPTURE(i);
      REQUIRE(s.k == r.k);
      CHECK(s.white == r.p_w);
      CHECK(s.blue == r.p_b);
      CHECK(s.red == r.p_r);
      for (int d = 0; d < 4; ++d) CHECK(s.wdeg[d] == r.w[d]);
      for (int d = 0; d < 3; ++d) CHECK(s.qdeg[d] == r.q[d]);
      if (i + 1 < ref.size()) s = next_round(s, params);
    }
  }
}

TEST_CASE("path probabilities match truncated series sums") {
  RoundState s;
  s.qdeg = {0.2, 0.5, 0.3};
  const double p2 = 0.1;
  const PathStats st = path_probabilities(s, p2);

  // Sum over the number i of inner degree-two vertices; i even means an odd
  // number of edges. 400 terms of a ratio-0.5 series are exact in binary64.
  double o1 = 0, e1 = 0, o3 = 0, e3 = 0, it3 = 0, io3 = 0, ie3 = 0;
  const double q1 = s.q(1), q2 = s.q(2), q3 = s.q(3);
  for (int i = 0; i < 400; ++i) {
    const double hop = std::pow(q2, i);
    const double calm_hop = std::pow(q2 * (1.0 - p2), i);
    if (i % 2 == 0) {
      o1 += q1 * hop;
      o3 += q3 * hop;
      io3 += q3 * calm_hop;
    } else {
      e1 += q1 * hop;
      e3 += q3 * hop;
      ie3 += q3 * calm_hop;
    }
    it3 += q3 * calm_hop;
  }
  const double tol = 1e-14;
  CHECK(rel_err(st.odd_to_one, o1) <= tol);
  CHECK(rel_err(st.even_to_one, e1) <= tol);
  CHECK(rel_err(st.to_one, o1 + e1) <= tol);
  CHECK(rel_err(st.odd_to_three, o3) <= tol);
  CHECK(rel_err(st.even_to_three, e3) <= tol);
  CHECK(rel_err(st.to_three, o3 + e3) <= tol);
  CHECK(rel_err(st.inactive_to_three, it3) <= tol);
  CHECK(rel_err(st.inactive_odd_to_three, io3) <= tol);
  CHECK(rel_err(st.inactive_even_to_three, ie3) <= tol);
  CHECK(rel_err(st.active_odd_to_three, o3 - io3) <= 1e-12);
  CHECK(rel_err(st.active_even_to_three, e3 - ie3) <= 1e-12);

  // Closed forms at this point: to_one = q1/(1-q2) and
  // inactive_to_three = q3/(1 - q2 (1-p2)).
  CHECK(rel_err(st.to_one, 0.4) <= tol);
  CHECK(rel_err(st.inactive_to_three, 0.3 / 0.55) <= tol);
}

TEST_CASE("recoloring and survival probabilities are coherent") {
  RoundState s;
  s.qdeg = {0.2, 0.5, 0.3};
  for (double p2 : {0.01, 0.1, 0.5, 0.9}) {
    CAPTURE(p2);
    const PathStats st = path_probabilities(s, p2);
    const RecolorProbs rec = recolor_probabilities(st, p2);
    const SurvivalProbs sv = survival_probs(st, p2);

    CHECK(rec.to_red[0] == 1.0);
    CHECK(rec.to_blue[0] == 0.0);
    // A degree-one white vertex lies on an always-processed path.
    CHECK(rel_err(rec.to_red[1] + rec.to_blue[1], 1.0) <= 1e-14);
    // A degree-three white vertex can only be recolored blue.
    CHECK(rec.to_red[3] == 0.0);
    for (int d = 0; d < 4; ++d) {
      CAPTURE(d);
      CHECK(rec.to_red[d] >= 0.0);
      CHECK(rec.to_blue[d] >= 0.0);
      CHECK(rec.to_red[d] + rec.to_blue[d] <= 1.0 + 1e-14);
    }

    CHECK(sv.survive_22 == 1.0);
    CHECK(sv.survive_23 == sv.survive_33);
    CHECK(sv.survive_23 >= 0.0);
    CHECK(sv.survive_23 <= 1.0);
    CHECK(sv.survive_32 >= 0.0);
    CHECK(sv.survive_32 <= 1.0);
    CHECK(sv.deg3_branch_stay > 0.0);
  }
}

TEST_CASE("transition tables reproduce the degree-distribution update") {
  Params params;  // defaults
  const Trace trace = solve(params);
  REQUIRE(trace.rounds.size() > 5000);

  for (size_t idx : {size_t{0}, size_t{49}, size_t{4999}, trace.rounds.size() - 2}) {
    CAPTURE(idx);
    const RoundState& s = trace.rounds[idx];
    const PathStats st = path_probabilities(s, params.p2);
    const SurvivalProbs sv = survival_probs(st, params.p2);
    const TransitionTables tables = transition_tables(st, sv, params.p2);

    std::array<double, 4> wnum{};
    double wden = 0.0;
    std::array<double, 4> qnum{};
    double qden = 0.0;
    for (int i = 2; i <= 3; ++i) {
      std::array<int, 3> J{};
      for (int pattern = 0; pattern < (1 << i); ++pattern) {
        double weight = 1.0;
        for (int b = 0; b < i; ++b) {
          J[b] = ((pattern >> b) & 1) ? 3 : 2;
          weight *= s.q(J[b]);
        }
        const std::span<const int> js(J.data(), static_cast<size_t>(i));
        const DegreeTransition vrow = tables.vertex(i, js);
        wden += s.wdeg[i] * weight * vrow.stay_white;
        for (int d = 0; d < 4; ++d)
          wnum[d] += s.wdeg[i] * weight * vrow.stay_white * vrow.next_degree[d];
        const DegreeTransition erow = tables.edge(i, js);
        qden += s.q(i) * weight * erow.stay_white;
        for (int d = 0; d < 4; ++d)
          qnum[d] += s.q(i) * weight * erow.stay_white * erow.next_degree[d];
      }
    }

    const RoundState next = next_round(s, params);
    for (int d = 0; d < 4; ++d) {
      CAPTURE(d);
      CHECK(rel_err(wnum[d] / wden, next.wdeg[d]) <= 1e-12);
    }
    CHECK(qnum[0] == 0.0);  // the distinguished surviving neighbor counts
    for (int d = 1; d <= 3; ++d) {
      CAPTURE(d);
      CHECK(rel_err(qnum[d] / qden, next.qdeg[d - 1]) <= 1e-12);
    }
  }
}

TEST_CASE("transition table lookups validate and handle degree-one neighbors") {
  RoundState s;
  s.qdeg = {0.2, 0.5, 0.3};
  const PathStats st = path_probabilities(s, 0.1);
  const SurvivalProbs sv = survival_probs(st, 0.1);
  const TransitionTables t = transition_tables(st, sv, 0.1);

  const int j23[] = {2, 3};
  CHECK(t.vertex(2, j23).stay_white == t.vertex2[2].stay_white);
  const int j332[] = {3, 3, 2};
  CHECK(t.edge(3, j332).stay_white == t.edge3[3].stay_white);

  const int j1[] = {1, 2};
  CHECK(t.vertex(2, j1).stay_white == 0.0);
  CHECK(t.edge(2, j1).stay_white == 0.0);

  const int bad[] = {2, 2};
  CHECK_THROWS_AS((void)t.vertex(3, bad), PreconditionError);
  CHECK_THROWS_AS((void)t.vertex(1, std::span<const int>(bad, 1)), PreconditionError);

  for (int pattern = 0; pattern < 8; ++pattern) {
    CAPTURE(pattern);
    const DegreeTransition& row = t.vertex3[pattern];
    CHECK(row.stay_white >= 0.0);
    CHECK(row.stay_white <= 1.0);
    double total = 0.0;
    for (double x : row.next_degree) total += x;
    CHECK(rel_err(total, 1.0) <= 1e-12);
  }
}

TEST_CASE("compensated accumulation changes nothing observable") {
  Params plain;
  Params comp;
  comp.compensated_sums = true;
  const Trace a = solve(plain);
  const Trace b = solve(comp);
  REQUIRE(a.rounds.size() == b.rounds.size());
  CHECK(rel_err(a.final_state().red, b.final_state().red) <= 1e-10);
  // The white mass decays geometrically for three hundred thousand rounds, so
  // a last-bit difference in summation order is amplified there. The stopping
  // round and the red mass are the quantities anyone reads off a run.
  CHECK(rel_err(a.final_state().white, b.final_state().white) <= 1e-3);
  CHECK(rel_err(a.rounds[999].white, b.rounds[999].white) <= 1e-10);
  CHECK(rel_err(a.rounds[999].red, b.rounds[999].red) <= 1e-10);
}

TEST_CASE("stop conditions") {
  SUBCASE("p1 = 0 never leaves white and hits the round cap") {
    Params params;
    params.p1 = 0.0;
    params.max_rounds = 50;
    const Trace trace = solve(params);
    CHECK(trace.stop == StopReason::max_rounds);
    CHECK_FALSE(trace.converged());
    CHECK(trace.rounds.size() == 50);
    CHECK(trace.final_state().red == 0.0);
    CHECK(trace.final_state().white == 1.0);
  }
  SUBCASE("threshold 1.0 stops after the first round") {
    Params params;
    params.white_threshold = 1.0;
    const Trace trace = solve(params);
    CHECK(trace.converged());
    CHECK(trace.rounds.size() == 1);
  }
}

TEST_CASE("invariants hold along a full run") {
  Params params;
  params.p1 = 1e-3;
  params.p2 = 1e-4;
  const Trace trace = solve(params);
  REQUIRE(trace.converged());
  double prev_red = 0.0, prev_blue = 0.0, prev_white = 1.0;
  for (const RoundState& s : trace.rounds) {
    CAPTURE(s.k);
    CHECK(rel_err(s.white + s.blue + s.red, 1.0) <= 1e-10);
    double wsum = 0.0;
    for (double x : s.wdeg) {
      CHECK(x >= -1e-15);
      wsum += x;
    }
    CHECK(rel_err(wsum, 1.0) <= 1e-10);
    double qsum = 0.0;
    for (double x : s.qdeg) {
      CHECK(x >= -1e-15);
      qsum += x;
    }
    CHECK(rel_err(qsum, 1.0) <= 1e-10);
    CHECK(s.red >= prev_red);
    CHECK(s.blue >= prev_blue);
    CHECK(s.white <= prev_white + 1e-15);
    prev_red = s.red;
    prev_blue = s.blue;
    prev_white = s.white;
  }
}

TEST_CASE("parameter validation") {
  Params params;
  params.p1 = -0.1;
  CHECK_THROWS_AS(solve(params), PreconditionError);
  params.p1 = 1e-5;
  params.p2 = 1.5;
  CHECK_THROWS_AS(solve(params), PreconditionError);
  params.p2 = 1e-5;
  params.white_threshold = 0.0;
  CHECK_THROWS_AS(solve(params), PreconditionError);
  params.white_threshold = 1e-6;
  params.max_rounds = 0;
  CHECK_THROWS_AS(solve(params), PreconditionError);
}

TEST_CASE("degenerate edge-degree distribution is reported") {
  RoundState s;
  s.qdeg = {0.0, 1.0, 0.0};
  CHECK_THROWS_AS(path_probabilities(s, 0.1), DegeneracyError);
}
