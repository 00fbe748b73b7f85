#include "reference_recurrence.hpp"

#include <cmath>

namespace reference {

namespace {
// libm's pow behind a volatile function pointer: the compiler would
// otherwise fold pow(x, 2.0) into x*x at compile time, and libm's square can
// differ from x*x in the last bit. This evaluation exists to pin the exact
// arithmetic of the recurrence, so every integer power calls libm for real.
double pow_runtime(double base, double exponent) { return std::pow(base, exponent); }
double (*volatile libm_pow)(double, double) = &pow_runtime;
}  // namespace

std::vector<Row> run(double p_1, double p_2, double white_threshold, int max_rounds) {
  std::vector<Row> rows;
  double p_w = 1.0, p_b = 0.0, p_r = 0.0;
  double w[4] = {0.0, 0.0, 0.0, 3.0};
  double q[4] = {0.0, 0.0, 0.0, 1.0};  // index = degree, q[0] unused
  int k = 0;

  while (p_w > white_threshold && static_cast<int>(rows.size()) < max_rounds) {
    k += 1;

    if (k == 1) {
      // First round in closed form; t is the probability that a fixed
      // neighbor of a white vertex is itself still white. Integer powers go
      // through libm_pow on purpose: the library evaluates them the same
      // way, and libm's rounding of a square or cube can differ from a
      // multiplication chain in the last bit, which a bit-for-bit
      // comparison would surface.
      const double t = libm_pow(1.0 - p_1, 2.0);
      w[3] = libm_pow(t, 3.0);
      w[2] = 3.0 * libm_pow(t, 2.0) * (1.0 - t);
      w[1] = 3.0 * t * libm_pow(1.0 - t, 2.0);
      w[0] = libm_pow(1.0 - t, 3.0);
      q[3] = libm_pow(t, 2.0);
      q[2] = 2.0 * t * (1.0 - t);
      q[1] = libm_pow(1.0 - t, 2.0);
      p_b = 1.0 - libm_pow(1.0 - p_1, 3.0);
      p_r = p_1 * (1.0 - p_b);
      p_w = 1.0 - p_r - p_b;

      Row row;
      row.k = k;
      row.p_w = p_w;
      row.p_b = p_b;
      row.p_r = p_r;
      for (int i = 0; i < 4; ++i) row.w[i] = w[i];
      for (int i = 1; i <= 3; ++i) row.q[i - 1] = q[i];
      rows.push_back(row);
      continue;
    }

    // Probabilities that a maximal white path leaving a white vertex has a
    // given parity/endpoint type. o/e = odd/even inner length, 1/3 = degree
    // of the far endpoint, _n/_y = no inner vertex activated / at least one.
    const double o1 = q[1] / (1.0 - libm_pow(q[2], 2.0));
    const double e1 = q[2] * o1;
    const double p1 = o1 + e1;
    (void)p1;

    const double o3 = q[3] / (1.0 - libm_pow(q[2], 2.0));
    const double e3 = q[2] * o3;
    const double p3 = o3 + e3;

    const double p3_n = q[3] / (1.0 - q[2] * (1.0 - p_2));
    const double o3_n = q[3] / (1.0 - libm_pow(q[2], 2.0) * libm_pow(1.0 - p_2, 2.0));
    const double e3_n = q[2] * (1.0 - p_2) * o3_n;

    const double o3_y = (libm_pow(q[2], 2.0) * (1.0 - libm_pow(1.0 - p_2, 2.0)) * o3) /
                        (1.0 - libm_pow(q[2], 2.0) * libm_pow(1.0 - p_2, 2.0));
    const double e3_y = q[2] * (p_2 * o3 + (1.0 - p_2) * o3_y);

    // Per-degree recoloring probabilities of a white vertex in this round.
    double Pr[4] = {1.0, 0.0, 0.0, 0.0};
    double Pb[4] = {0.0, 0.0, 0.0, 0.0};

    Pr[1] = (e1 + o1 * .5) + p3;
    Pb[1] = o1 * .5;

    Pr[2] = libm_pow(e1, 2.0) + e1 * o1 + 2.0 * e1 * p3;
    Pr[2] += (1.0 - p_2) * (libm_pow(o3_y, 2.0) + 2.0 * o3_y * o3_n + o3_y * e3_y + o3_n * e3_y +
                            o3_y * e3_n);
    Pr[2] += p_2 * (libm_pow(o3, 2.0) + o3 * e3);

    Pb[2] = libm_pow(o1, 2.0) + e1 * o1 + 2.0 * o1 * p3;
    Pb[2] += (1.0 - p_2) * (libm_pow(e3_y, 2.0) + 2.0 * e3_y * e3_n + o3_y * e3_y + o3_n * e3_y +
                            o3_y * e3_n);
    Pb[2] += p_2 * (libm_pow(e3, 2.0) + o3 * e3);

    const double keep = p3_n + e1 + o3_y / 2.0;  // one branch keeps a degree-3 vertex white
    Pb[3] = 1.0 - libm_pow(keep, 3.0);

    p_r += p_w * (w[0] + w[1] * Pr[1] + w[2] * Pr[2]);
    p_b += p_w * (w[1] * Pb[1] + w[2] * Pb[2] + w[3] * Pb[3]);
    p_w = 1.0 - p_r - p_b;

    // Stay-white and neighbor-survival factors for the degree updates.
    const double r32 = o1 + (1.0 - p_2) * (p3_n + .5 * e3_y) + p_2 * (.5 * e3);
    const double s33 = libm_pow(keep, 2.0);
    const double s32 = (1.0 - p_2) * p3_n / r32;

    // New degree distribution of surviving white vertices: sum over the
    // center degree u and the degree vector J of its neighbors (entries with
    // a degree-1 neighbor carry no surviving mass and are skipped).
    //
    // T is volatile in both update blocks: two consecutive iterations of the
    // innermost loops can add into the same slot, and an optimizer that
    // vectorizes the loop may fuse those adds into one, changing the
    // rounding. Volatile pins every add as a separate load/round/store.
    {
      volatile double T[4] = {0.0, 0.0, 0.0, 0.0};
      double sum = 0.0;
      for (int u = 2; u <= 3; ++u) {
        int J[3] = {2, 2, 2};
        while (true) {
          double C_p = w[u];
          for (int s = 0; s < u; ++s) C_p *= q[J[s]];

          double N[3][2];  // N[s][0] = slot survives, N[s][1] = slot lost
          int cnt[3];
          N[2][0] = 1.0;
          N[2][1] = 0.0;
          cnt[2] = 1;  // unused third slot when u == 2
          if (u == 2) {
            C_p *= 1.0 - p_2;
            for (int s = 0; s < 2; ++s) {
              if (J[s] == 3) {
                N[s][0] = s33;
                N[s][1] = 1.0 - N[s][0];
                cnt[s] = 2;
              } else {
                C_p *= (1.0 - p_2) * p3_n;
                N[s][0] = 1.0;
                N[s][1] = 0.0;
                cnt[s] = 1;
              }
            }
          } else {
            for (int s = 0; s < 3; ++s) {
              if (J[s] == 3) {
                N[s][0] = s33;
              } else {
                C_p *= r32;
                N[s][0] = s32;
              }
              N[s][1] = 1.0 - N[s][0];
              cnt[s] = 2;
            }
          }

          sum += C_p;
          for (int a = 0; a < cnt[0]; ++a)
            for (int b = 0; b < cnt[1]; ++b)
              for (int c = 0; c < cnt[2]; ++c) {
                const int slot = u - a - b - c;
                T[slot] = T[slot] + C_p * N[0][a] * N[1][b] * N[2][c];
              }

          int s = u - 1;
          while (s >= 0 && J[s] == 3) J[s--] = 2;
          if (s < 0) break;
          J[s] = 3;
        }
      }
      for (int i = 0; i < 4; ++i) w[i] = T[i] / sum;
    }

    // New edge-degree distribution; J[0] is the distinguished neighbor (it
    // survives by conditioning and only contributes a stay-white factor).
    {
      volatile double T[4] = {0.0, 0.0, 0.0, 0.0};
      double sum = 0.0;
      for (int u = 2; u <= 3; ++u) {
        int J[3] = {2, 2, 2};
        while (true) {
          double C_p = q[u];
          for (int s = 0; s < u; ++s) C_p *= q[J[s]];

          if (J[0] == 3)
            C_p *= s33;
          else
            C_p *= (1.0 - p_2) * p3_n;

          double N[2][2];
          int cnt[2];
          N[1][0] = 1.0;
          N[1][1] = 0.0;
          cnt[1] = 1;  // unused second loss slot when u == 2
          if (u == 2) {
            C_p *= 1.0 - p_2;
            if (J[1] == 3) {
              N[0][0] = s33;
              N[0][1] = 1.0 - N[0][0];
              cnt[0] = 2;
            } else {
              C_p *= (1.0 - p_2) * p3_n;
              N[0][0] = 1.0;
              N[0][1] = 0.0;
              cnt[0] = 1;
            }
          } else {
            for (int s = 1; s < 3; ++s) {
              if (J[s] == 3) {
                N[s - 1][0] = s33;
              } else {
                C_p *= r32;
                N[s - 1][0] = s32;
              }
              N[s - 1][1] = 1.0 - N[s - 1][0];
              cnt[s - 1] = 2;
            }
          }

          sum += C_p;
          for (int b = 0; b < cnt[0]; ++b)
            for (int c = 0; c < cnt[1]; ++c) {
              const int slot = u - b - c;
              T[slot] = T[slot] + C_p * N[0][b] * N[1][c];
            }

          int s = u - 1;
          while (s >= 0 && J[s] == 3) J[s--] = 2;
          if (s < 0) break;
          J[s] = 3;
        }
      }
      for (int i = 1; i <= 3; ++i) q[i] = T[i] / sum;
    }

    Row row;
    row.k = k;
    row.p_w = p_w;
    row.p_b = p_b;
    row.p_r = p_r;
    for (int i = 0; i < 4; ++i) row.w[i] = w[i];
    for (int i = 1; i <= 3; ++i) row.q[i - 1] = q[i];
    rows.push_back(row);
  }

  return rows;
}

}  // namespace reference
