#include "girthlab/certificates.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "girthlab/errors.hpp"
#include "parallel_trials.hpp"

namespace girthlab {

namespace {

// Two-sided 99% normal quantile.
constexpr double kZ99 = 2.5758293035489004;

}  // namespace

CoverageReport coverage_from_counts(std::span<const long> counts, long trials) {
  if (trials < 1) throw PreconditionError("coverage needs at least one trial");
  CoverageReport rep;
  rep.trials = trials;
  rep.frequency.reserve(counts.size());
  rep.radius99.reserve(counts.size());
  double sum = 0.0;
  for (size_t v = 0; v < counts.size(); ++v) {
    if (counts[v] < 0 || counts[v] > trials)
      throw PreconditionError("inclusion count out of range at vertex " + std::to_string(v));
    const double f = static_cast<double>(counts[v]) / static_cast<double>(trials);
    double radius = kZ99 * std::sqrt(f * (1.0 - f) / static_cast<double>(trials));
    if (f == 0.0 || f == 1.0) radius = std::max(radius, 1.0 / static_cast<double>(trials));
    rep.frequency.push_back(f);
    rep.radius99.push_back(radius);
    sum += f;
    if (rep.argmin < 0 || f < rep.min_frequency) {
      rep.min_frequency = f;
      rep.argmin = static_cast<int>(v);
    }
  }
  rep.mean_frequency = counts.empty() ? 0.0 : sum / static_cast<double>(counts.size());
  return rep;
}

CoverageReport monte_carlo_coverage(const CubicGraph& g, const SimParams& params, long trials,
                                    uint64_t seed, int workers) {
  if (trials < 1) throw PreconditionError("coverage needs at least one trial");
  const size_t n = static_cast<size_t>(g.vertex_count());
  std::vector<long> counts = internal::parallel_counts(
      trials, workers, n, [&](long trial, std::vector<long>& local) {
        Rng rng(seed + static_cast<uint64_t>(trial));
        const SimResult res = run_procedure(g, params, rng);
        for (size_t v = 0; v < n; ++v)
          if (res.state.color[v] == Color::red) ++local[v];
      });
  return coverage_from_counts(counts, trials);
}

FractionalBound fractional_upper_bound(CoverageReport report) {
  if (report.argmin < 0) throw PreconditionError("coverage report is empty");
  const double floor = report.min_frequency - report.radius99[report.argmin];
  if (!(floor > 0.0))
    throw PreconditionError(
        "insufficient coverage: minimum frequency " + std::to_string(report.min_frequency) +
        " at vertex " + std::to_string(report.argmin) +
        " minus its confidence radius is not positive");
  FractionalBound out;
  out.upper_bound = 1.0 / floor;
  out.report = std::move(report);
  return out;
}

IndependentSetResult exact_max_independent_set(const CubicGraph& g) {
  const int n = g.vertex_count();
  if (n > 64)
    throw PreconditionError("exact independent set is capped at 64 vertices, got " +
                            std::to_string(n));
  std::vector<uint64_t> adj(static_cast<size_t>(n), 0);
  for (const auto& [u, v] : g.edges()) {
    adj[u] |= uint64_t{1} << v;
    adj[v] |= uint64_t{1} << u;
  }

  uint64_t best_set = 0;
  int best = 0;
  // Branch and bound on the candidate mask. A candidate of candidate-degree
  // at most one can always be taken (swapping it for its sole neighbor never
  // hurts); otherwise branching on a maximum-degree candidate keeps the
  // candidate-count bound effective.
  auto search = [&](auto&& self, uint64_t cand, uint64_t chosen, int size) -> void {
    if (size + std::popcount(cand) <= best) return;
    if (cand == 0) {
      best = size;
      best_set = chosen;
      return;
    }
    int pick = -1, pick_deg = -1;
    for (uint64_t rest = cand; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const int d = std::popcount(adj[v] & cand);
      if (d <= 1) {
        self(self, cand & ~(adj[v] | (uint64_t{1} << v)), chosen | (uint64_t{1} << v), size + 1);
        return;
      }
      if (d > pick_deg) {
        pick_deg = d;
        pick = v;
      }
    }
    self(self, cand & ~(adj[pick] | (uint64_t{1} << pick)), chosen | (uint64_t{1} << pick),
         size + 1);
    self(self, cand & ~(uint64_t{1} << pick), chosen, size);
  };
  const uint64_t all = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
  search(search, all, 0, 0);

  IndependentSetResult out;
  out.size = best;
  for (int v = 0; v < n; ++v)
    if (best_set & (uint64_t{1} << v)) out.vertices.push_back(v);
  return out;
}

CutResult cut_from_independent_set(const CubicGraph& g, std::span<const int> independent_set) {
  const int n = g.vertex_count();
  std::vector<char> in_set(static_cast<size_t>(n), 0);
  for (int v : independent_set) {
    if (v < 0 || v >= n)
      throw PreconditionError("vertex " + std::to_string(v) + " out of range");
    if (in_set[v])
      throw PreconditionError("vertex " + std::to_string(v) + " listed twice");
    in_set[v] = 1;
  }
  CutResult out;
  for (int v : independent_set) {
    for (int w : g.neighbors(v)) {
      if (in_set[w])
        throw PreconditionError("set is not independent: edge (" +
                                std::to_string(std::min(v, w)) + ", " +
                                std::to_string(std::max(v, w)) + ")");
    }
    out.cut_size += g.degree(v);
  }
  out.side = std::move(in_set);
  return out;
}

CutResult exact_max_cut(const CubicGraph& g) {
  const int n = g.vertex_count();
  if (n > 24)
    throw PreconditionError("exact max cut is capped at 24 vertices, got " + std::to_string(n));
  const auto edges = g.edges();
  long best = -1;
  uint32_t best_mask = 0;
  // The last vertex stays on side 0: complementary bipartitions give the
  // same cut.
  const uint32_t limit = n <= 1 ? 1 : uint32_t{1} << (n - 1);
  for (uint32_t mask = 0; mask < limit; ++mask) {
    long cut = 0;
    for (const auto& [u, v] : edges) cut += ((mask >> u) ^ (mask >> v)) & 1u;
    if (cut > best) {
      best = cut;
      best_mask = mask;
    }
  }
  CutResult out;
  out.cut_size = best < 0 ? 0 : best;
  out.side.assign(static_cast<size_t>(n), 0);
  for (int v = 0; v < n; ++v) out.side[v] = static_cast<char>((best_mask >> v) & 1u);
  return out;
}

}  // namespace girthlab
