#pragma once

#include <vector>

namespace reference {

struct Row {
  int k = 0;
  double p_w = 0.0;
  double p_b = 0.0;
  double p_r = 0.0;
  double w[4] = {0.0, 0.0, 0.0, 0.0};  // degree distribution of white vertices
  double q[3] = {0.0, 0.0, 0.0};       // edge-degree distribution, degrees 1..3
};

// Straight-line evaluation of the white/blue/red recurrence, written as an
// independent cross-check for the library: explicit neighbor-configuration
// sums, no shared helpers with girthlab::solve. It evaluates products in the
// same documented factor order as the library, so the two implementations
// are expected to agree bit for bit round by round.
std::vector<Row> run(double p_1, double p_2, double white_threshold, int max_rounds);

}  // namespace reference
