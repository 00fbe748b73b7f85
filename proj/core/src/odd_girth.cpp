#include "girthlab/odd_girth.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "girthlab/errors.hpp"
#include "parallel_trials.hpp"

namespace girthlab {

namespace {

// Locates a bridge via the standard lowlink depth-first search; returns
// {-1, -1} when the graph is bridgeless.
std::pair<int, int> find_bridge(const CubicGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> order(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0),
      parent(static_cast<size_t>(n), -1);
  int counter = 0;
  for (int root = 0; root < n; ++root) {
    if (order[root] >= 0) continue;
    std::vector<std::pair<int, int>> stack{{root, 0}};  // vertex, next slot
    order[root] = low[root] = counter++;
    while (!stack.empty()) {
      auto& [v, slot] = stack.back();
      if (slot < g.degree(v)) {
        const int w = g.neighbors(v)[slot++];
        if (order[w] < 0) {
          parent[w] = v;
          order[w] = low[w] = counter++;
          stack.emplace_back(w, 0);
        } else if (w != parent[v]) {
          low[v] = std::min(low[v], order[w]);
        }
        // A parallel-edge check is unnecessary: the graph is simple, so the
        // single edge to the parent is the tree edge itself.
      } else {
        stack.pop_back();
        if (!stack.empty()) {
          const int p = stack.back().first;
          low[p] = std::min(low[p], low[v]);
          if (low[v] > order[p]) return {std::min(p, v), std::max(p, v)};
        }
      }
    }
  }
  return {-1, -1};
}

std::vector<int> canonical_cycle_list(std::vector<int> cycle) {
  const auto mi = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), mi, cycle.end());
  if (cycle.size() >= 3 && cycle[1] > cycle.back())
    std::reverse(cycle.begin() + 1, cycle.end());
  return cycle;
}

void validate_inputs(const CubicGraph& g, const TwoFactor& f, int g_odd) {
  if (g_odd < 5 || g_odd % 2 == 0)
    throw PreconditionError("odd girth parameter must be an odd integer >= 5, got " +
                            std::to_string(g_odd));
  const int n = g.vertex_count();
  if (!g.is_cubic()) throw PreconditionError("the construction requires a cubic graph");

  // Two-factor structure: cycles partition the vertices along graph edges,
  // and the matching is a perfect matching on the remaining edges.
  std::vector<char> on_cycle(static_cast<size_t>(n), 0);
  for (const auto& cyc : f.cycles) {
    if (cyc.size() < 3) throw PreconditionError("two-factor contains a cycle shorter than 3");
    for (size_t i = 0; i < cyc.size(); ++i) {
      const int u = cyc[i], v = cyc[(i + 1) % cyc.size()];
      if (u < 0 || u >= n) throw PreconditionError("two-factor vertex out of range");
      if (on_cycle[u]) throw PreconditionError("vertex " + std::to_string(u) +
                                               " appears twice in the two-factor");
      on_cycle[u] = 1;
      if (!g.has_edge(u, v))
        throw PreconditionError("two-factor uses the non-edge (" + std::to_string(u) + ", " +
                                std::to_string(v) + ")");
    }
  }
  for (int v = 0; v < n; ++v)
    if (!on_cycle[v])
      throw PreconditionError("vertex " + std::to_string(v) + " is not covered by the two-factor");

  std::vector<char> matched(static_cast<size_t>(n), 0);
  for (const auto& [u, v] : f.matching) {
    if (u < 0 || u >= n || v < 0 || v >= n || !g.has_edge(u, v))
      throw PreconditionError("matching contains a non-edge");
    if (matched[u] || matched[v]) throw PreconditionError("matching is not vertex-disjoint");
    matched[u] = matched[v] = 1;
  }
  for (int v = 0; v < n; ++v)
    if (!matched[v])
      throw PreconditionError("vertex " + std::to_string(v) + " is unmatched");

  const auto report = girth(g);
  if (report.odd_girth && *report.odd_girth < g_odd)
    throw PreconditionError("odd girth is " + std::to_string(*report.odd_girth) +
                            ", below the required " + std::to_string(g_odd));
}

// The draw itself, after validation. Randomness, in order: the position
// class, one fair coin per component (sorted by smallest vertex), one fair
// coin per red-red matching edge (sorted).
std::vector<int> draw_unchecked(const CubicGraph& g, const TwoFactor& f, int g_odd, Rng& rng) {
  const int n = g.vertex_count();
  const int m = (g_odd + 1) / 2;
  const int k0 = static_cast<int>(uniform_below(rng, static_cast<uint64_t>(m)));

  // W: positions congruent to k0 on each cycle. Also record, for every
  // vertex outside W, its neighbors along its own F-cycle.
  std::vector<char> in_w(static_cast<size_t>(n), 0);
  std::vector<std::array<int, 2>> f_nbr(static_cast<size_t>(n), {-1, -1});
  for (const auto& cyc : f.cycles) {
    const int len = static_cast<int>(cyc.size());
    for (int j = 0; j < len; ++j)
      if (j % m == k0) in_w[cyc[j]] = 1;
    for (int j = 0; j < len; ++j) {
      const int v = cyc[j];
      f_nbr[v][0] = cyc[(j + len - 1) % len];
      f_nbr[v][1] = cyc[(j + 1) % len];
    }
  }

  // Components of F minus W, discovered in vertex order so smaller component
  // ids have smaller minimum vertices.
  std::vector<int> comp(static_cast<size_t>(n), -1);
  int comp_count = 0;
  std::vector<int> queue;
  for (int s = 0; s < n; ++s) {
    if (in_w[s] || comp[s] >= 0) continue;
    const int c = comp_count++;
    queue.assign(1, s);
    comp[s] = c;
    while (!queue.empty()) {
      const int v = queue.back();
      queue.pop_back();
      for (int w : f_nbr[v]) {
        if (w < 0 || in_w[w] || comp[w] >= 0) continue;
        comp[w] = c;
        queue.push_back(w);
      }
    }
  }

  // Two-color each component under all graph edges inside it. The odd-girth
  // precondition makes every component bipartite: it spans fewer than g_odd
  // vertices, so an odd cycle inside would be shorter than the odd girth.
  std::vector<char> cls(static_cast<size_t>(n), 0);
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<char> red(static_cast<size_t>(n), 0);
  std::vector<char> comp_red_class(static_cast<size_t>(comp_count), 0);
  for (int c = 0; c < comp_count; ++c) comp_red_class[c] = fair_coin(rng) ? 1 : 0;
  for (int s = 0; s < n; ++s) {
    if (in_w[s] || seen[s]) continue;
    queue.assign(1, s);
    seen[s] = 1;
    cls[s] = 0;  // the smallest vertex of the component anchors class 0
    while (!queue.empty()) {
      const int v = queue.back();
      queue.pop_back();
      for (int w : g.neighbors(v)) {
        if (in_w[w] || comp[w] != comp[v]) continue;
        if (!seen[w]) {
          seen[w] = 1;
          cls[w] = cls[v] ^ 1;
          queue.push_back(w);
        } else if (cls[w] == cls[v]) {
          throw PreconditionError(
              "a component of the cycle cover minus W is not bipartite; the odd-girth "
              "precondition does not hold");
        }
      }
    }
  }
  for (int v = 0; v < n; ++v)
    if (!in_w[v] && cls[v] == comp_red_class[comp[v]]) red[v] = 1;

  // Red-red edges can only be matching edges; uncolor one endpoint of each.
  for (const auto& [u, v] : f.matching)
    if (red[u] && red[v]) red[fair_coin(rng) ? v : u] = 0;

  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (red[v]) out.push_back(v);
  for (int v : out)
    for (int w : g.neighbors(v))
      if (red[w])
        throw std::logic_error("internal: drawn set is not independent at edge (" +
                               std::to_string(std::min(v, w)) + ", " +
                               std::to_string(std::max(v, w)) + ")");
  return out;
}

}  // namespace

TwoFactor find_two_factor(const CubicGraph& g) {
  const int n = g.vertex_count();
  if (!g.is_cubic()) throw PreconditionError("a two-factor requires a cubic graph");
  if (n > 200)
    throw PreconditionError("two-factor search is capped at 200 vertices, got " +
                            std::to_string(n));
  const auto bridge = find_bridge(g);
  if (bridge.first >= 0)
    throw PreconditionError("graph has a bridge (" + std::to_string(bridge.first) + ", " +
                            std::to_string(bridge.second) +
                            "); a perfect matching is not guaranteed");

  // Backtracking perfect matching. Always extend at an unmatched vertex with
  // the fewest unmatched neighbors: forced moves are played first and dead
  // ends surface early.
  std::vector<int> mate(static_cast<size_t>(n), -1);
  auto search = [&](auto&& self) -> bool {
    int pick = -1, pick_free = 4;
    for (int v = 0; v < n; ++v) {
      if (mate[v] >= 0) continue;
      int free = 0;
      for (int w : g.neighbors(v)) free += mate[w] < 0 ? 1 : 0;
      if (free < pick_free) {
        pick_free = free;
        pick = v;
      }
    }
    if (pick < 0) return true;       // everyone matched
    if (pick_free == 0) return false;  // dead end
    for (int w : g.neighbors(pick)) {
      if (mate[w] >= 0) continue;
      mate[pick] = w;
      mate[w] = pick;
      if (self(self)) return true;
      mate[pick] = -1;
      mate[w] = -1;
    }
    return false;
  };
  if (!search(search))
    throw std::logic_error(
        "internal: no perfect matching found in a bridgeless cubic graph");

  TwoFactor out;
  for (int v = 0; v < n; ++v)
    if (v < mate[v]) out.matching.emplace_back(v, mate[v]);
  std::sort(out.matching.begin(), out.matching.end());

  // The other two edges at every vertex form the two-factor; walk its cycles.
  std::vector<char> visited(static_cast<size_t>(n), 0);
  for (int s = 0; s < n; ++s) {
    if (visited[s]) continue;
    std::vector<int> cyc;
    int prev = -1, cur = s;
    do {
      visited[cur] = 1;
      cyc.push_back(cur);
      int nxt = -1;
      for (int w : g.neighbors(cur))
        if (w != mate[cur] && w != prev) {
          nxt = w;
          break;
        }
      prev = cur;
      cur = nxt;
    } while (cur != s);
    out.cycles.push_back(canonical_cycle_list(std::move(cyc)));
  }
  std::sort(out.cycles.begin(), out.cycles.end());
  return out;
}

std::vector<int> draw_independent_set(const CubicGraph& g, const TwoFactor& two_factor,
                                      int g_odd, Rng& rng) {
  validate_inputs(g, two_factor, g_odd);
  return draw_unchecked(g, two_factor, g_odd, rng);
}

OddGirthBound odd_girth_bound(int g_odd) {
  if (g_odd < 5 || g_odd % 2 == 0)
    throw PreconditionError("odd girth parameter must be an odd integer >= 5, got " +
                            std::to_string(g_odd));
  OddGirthBound b;
  b.coverage = 3.0 * (1.0 - 2.0 / (g_odd + 1)) / 8.0;
  b.fractional = 8.0 / (3.0 - 6.0 / (g_odd + 1));
  return b;
}

CoverageReport odd_girth_coverage(const CubicGraph& g, const TwoFactor& two_factor, int g_odd,
                                  long trials, uint64_t seed, int workers) {
  if (trials < 1) throw PreconditionError("coverage needs at least one trial");
  validate_inputs(g, two_factor, g_odd);
  const size_t n = static_cast<size_t>(g.vertex_count());
  std::vector<long> counts = internal::parallel_counts(
      trials, workers, n, [&](long trial, std::vector<long>& local) {
        Rng rng(seed + static_cast<uint64_t>(trial));
        for (int v : draw_unchecked(g, two_factor, g_odd, rng)) ++local[v];
      });
  return coverage_from_counts(counts, trials);
}

}  // namespace girthlab
