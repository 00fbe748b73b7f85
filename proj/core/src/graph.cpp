#include "girthlab/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace girthlab {

CubicGraph CubicGraph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  if (n < 0) throw PreconditionError("vertex count must be nonnegative, got " + std::to_string(n));
  CubicGraph g;
  g.adj_.assign(static_cast<size_t>(n), {-1, -1, -1});
  g.deg_.assign(static_cast<size_t>(n), 0);
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw PreconditionError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                              ") out of range for vertex count " + std::to_string(n));
    if (u == v) throw PreconditionError("self-loop at vertex " + std::to_string(u));
    if (g.has_edge(u, v))
      throw PreconditionError("parallel edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    if (g.deg_[u] == 3 || g.deg_[v] == 3)
      throw PreconditionError("vertex " + std::to_string(g.deg_[u] == 3 ? u : v) +
                              " would exceed degree three");
    g.adj_[u][g.deg_[u]++] = v;
    g.adj_[v][g.deg_[v]++] = u;
    ++g.m_;
  }
  for (int v = 0; v < n; ++v) std::sort(g.adj_[v].begin(), g.adj_[v].begin() + g.deg_[v]);
  return g;
}

bool CubicGraph::is_cubic() const {
  if (deg_.empty()) return false;
  for (int d : deg_)
    if (d != 3) return false;
  return true;
}

std::vector<std::pair<int, int>> CubicGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<size_t>(m_));
  for (int v = 0; v < vertex_count(); ++v)
    for (int w : neighbors(v))
      if (v < w) out.emplace_back(v, w);
  return out;
}

namespace {

// Closes the two breadth-first tree paths from u and w into the simple cycle
// completed by the non-tree edge (u, w). The paths are walked up to their
// first common vertex; they are vertex-disjoint below it.
std::vector<int> close_tree_cycle(const std::vector<int>& dist, const std::vector<int>& parent,
                                  int u, int w) {
  std::vector<int> up_u{u}, up_w{w};
  int a = u, b = w;
  while (dist[a] > dist[b]) {
    a = parent[a];
    up_u.push_back(a);
  }
  while (dist[b] > dist[a]) {
    b = parent[b];
    up_w.push_back(b);
  }
  while (a != b) {
    a = parent[a];
    up_u.push_back(a);
    b = parent[b];
    up_w.push_back(b);
  }
  std::vector<int> cycle(up_u.begin(), up_u.end());
  for (int i = static_cast<int>(up_w.size()) - 2; i >= 0; --i) cycle.push_back(up_w[i]);
  return cycle;
}

// Length of the simple cycle that close_tree_cycle would return, without
// building it.
int tree_cycle_length(const std::vector<int>& dist, const std::vector<int>& parent, int u, int w) {
  int a = u, b = w;
  while (dist[a] > dist[b]) a = parent[a];
  while (dist[b] > dist[a]) b = parent[b];
  while (a != b) {
    a = parent[a];
    b = parent[b];
  }
  return dist[u] + dist[w] - 2 * dist[a] + 1;
}

// Removes revisited vertices from a closed odd walk, producing a simple odd
// cycle that is never longer. A repeat splits the walk into two closed
// sub-walks whose lengths sum to the whole; the odd one is kept.
std::vector<int> simplify_odd_walk(std::vector<int> walk) {
  bool changed = true;
  while (changed) {
    changed = false;
    const int len = static_cast<int>(walk.size());
    for (int i = 0; i < len && !changed; ++i) {
      for (int j = i + 1; j < len && !changed; ++j) {
        if (walk[i] != walk[j]) continue;
        if ((j - i) % 2 == 0) {
          walk.erase(walk.begin() + i + 1, walk.begin() + j + 1);
        } else {
          walk.assign(walk.begin() + i, walk.begin() + j);
        }
        changed = true;
      }
    }
  }
  return walk;
}

}  // namespace

GirthReport girth(const CubicGraph& g) {
  GirthReport rep;
  const int n = g.vertex_count();
  if (n == 0) return rep;

  // One sweep finds components, whether each contains a cycle (edge count at
  // least vertex count), and whether each is bipartite.
  std::vector<int> comp(n, -1);
  std::vector<char> side(n, 0);
  std::vector<char> comp_cyclic, comp_odd;
  std::vector<int> queue(n);
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int c = static_cast<int>(comp_cyclic.size());
    comp_cyclic.push_back(0);
    comp_odd.push_back(0);
    long vertices = 0, half_edges = 0;
    int head = 0, tail = 0;
    queue[tail++] = s;
    comp[s] = c;
    side[s] = 0;
    while (head < tail) {
      const int u = queue[head++];
      ++vertices;
      half_edges += g.degree(u);
      for (int w : g.neighbors(u)) {
        if (comp[w] < 0) {
          comp[w] = c;
          side[w] = side[u] ^ 1;
          queue[tail++] = w;
        } else if (side[w] == side[u]) {
          comp_odd[c] = 1;
        }
      }
    }
    if (half_edges / 2 >= vertices) comp_cyclic[c] = 1;
  }

  // Girth: capped breadth-first search from every vertex of a cyclic
  // component. For the shortest cycle overall and a root on it, the edge
  // opposite the root closes two tree paths of depth at most girth/2, so
  // capping the search at that depth keeps the scan exact.
  std::vector<int> dist(n), parent(n), stamp(n, -1);
  int best = std::numeric_limits<int>::max();
  for (int r = 0; r < n; ++r) {
    if (!comp_cyclic[comp[r]]) continue;
    if (best == 3) break;
    int head = 0, tail = 0;
    queue[tail++] = r;
    stamp[r] = r;
    dist[r] = 0;
    parent[r] = -1;
    while (head < tail) {
      const int u = queue[head++];
      if (best != std::numeric_limits<int>::max() && 2 * dist[u] + 1 > best) break;
      for (int w : g.neighbors(u)) {
        if (stamp[w] != r) {
          stamp[w] = r;
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue[tail++] = w;
        } else if (w != parent[u]) {
          const int len = tree_cycle_length(dist, parent, u, w);
          if (len < best) {
            best = len;
            rep.girth_cycle = close_tree_cycle(dist, parent, u, w);
          }
        }
      }
    }
  }
  if (best != std::numeric_limits<int>::max()) rep.girth = best;

  // Odd girth: the same capped scan on the bipartite double cover. State
  // 2*v + p is vertex v reached by a walk of parity p; an edge between two
  // visited states of equal parity closes an odd walk through the root, and
  // the minimum over all candidates is attained by a simple cycle.
  bool any_odd = false;
  for (char o : comp_odd) any_odd = any_odd || o != 0;
  if (any_odd) {
    std::vector<int> dist2(2 * static_cast<size_t>(n)), par2(2 * static_cast<size_t>(n)),
        stamp2(2 * static_cast<size_t>(n), -1);
    std::vector<int> queue2(2 * static_cast<size_t>(n));
    int best_odd = std::numeric_limits<int>::max();
    for (int r = 0; r < n; ++r) {
      if (!comp_odd[comp[r]]) continue;
      if (best_odd == 3) break;
      int head = 0, tail = 0;
      const int start = 2 * r;
      queue2[tail++] = start;
      stamp2[start] = r;
      dist2[start] = 0;
      par2[start] = -1;
      while (head < tail) {
        const int s = queue2[head++];
        if (best_odd != std::numeric_limits<int>::max() && 2 * dist2[s] + 1 > best_odd) break;
        const int u = s >> 1, p = s & 1;
        for (int w : g.neighbors(u)) {
          const int t = 2 * w + (p ^ 1);
          if (stamp2[t] != r) {
            stamp2[t] = r;
            dist2[t] = dist2[s] + 1;
            par2[t] = s;
            queue2[tail++] = t;
          }
        }
      }
      for (int i = 0; i < tail; ++i) {
        const int s = queue2[i];
        const int u = s >> 1, p = s & 1;
        for (int w : g.neighbors(u)) {
          const int t = 2 * w + p;  // equal parity: the closed walk is odd
          if (stamp2[t] != r) continue;
          const int cand = dist2[s] + dist2[t] + 1;
          if (cand < best_odd) {
            best_odd = cand;
            std::vector<int> walk;
            for (int cur = s; cur != -1; cur = par2[cur]) walk.push_back(cur >> 1);
            std::reverse(walk.begin(), walk.end());
            std::vector<int> back;
            for (int cur = t; cur != -1; cur = par2[cur]) back.push_back(cur >> 1);
            for (size_t j = 0; j + 1 < back.size(); ++j) walk.push_back(back[j]);
            rep.odd_girth_cycle = simplify_odd_walk(std::move(walk));
          }
        }
      }
    }
    rep.odd_girth = best_odd;
  }
  return rep;
}

std::vector<std::vector<int>> short_cycles(const CubicGraph& g, int bound) {
  std::vector<std::vector<int>> out;
  const int n = g.vertex_count();
  if (bound <= 3) return out;
  // Depth-first enumeration of simple paths from each root r through vertices
  // larger than r; an edge back to r closes a cycle whose smallest vertex is
  // r. Each cycle appears in both directions, so only the orientation with
  // the smaller second vertex is kept.
  std::vector<char> on_path(static_cast<size_t>(n), 0);
  std::vector<int> stack, slot;
  for (int r = 0; r < n; ++r) {
    stack.assign(1, r);
    slot.assign(1, 0);
    on_path[r] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      if (slot.back() >= g.degree(u)) {
        on_path[u] = 0;
        stack.pop_back();
        slot.pop_back();
        continue;
      }
      const int w = g.neighbors(u)[slot.back()++];
      if (w == r && stack.size() >= 3) {
        if (stack[1] < stack.back()) out.push_back(stack);
      } else if (w > r && !on_path[w] && static_cast<int>(stack.size()) + 1 <= bound - 1) {
        stack.push_back(w);
        slot.push_back(0);
        on_path[w] = 1;
      }
    }
  }
  return out;
}

CubicGraph generate_random_cubic(int n, uint64_t seed) {
  if (n < 4 || n % 2 != 0)
    throw PreconditionError("random cubic graph needs even n >= 4, got " + std::to_string(n));
  Rng rng(seed);
  std::vector<int> points(3 * static_cast<size_t>(n));
  std::vector<std::pair<int, int>> edges;
  edges.reserve(3 * static_cast<size_t>(n) / 2);
  // Pairing model: a uniform perfect matching on 3n half-edge points,
  // resampled from scratch whenever the projection has a loop or a parallel
  // edge. Acceptance odds approach exp(-2), so a long failure streak means a
  // broken random stream rather than bad luck.
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::iota(points.begin(), points.end(), 0);
    for (int i = 3 * n - 1; i > 0; --i) {
      const int j = static_cast<int>(uniform_below(rng, static_cast<uint64_t>(i) + 1));
      std::swap(points[i], points[j]);
    }
    edges.clear();
    bool simple = true;
    for (int i = 0; simple && i < 3 * n; i += 2) {
      const int u = points[i] / 3, v = points[i + 1] / 3;
      if (u == v)
        simple = false;
      else
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    if (!simple) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    return CubicGraph::from_edges(n, edges);
  }
  throw DegeneracyError("pairing model produced no simple graph in 1000 attempts");
}

// Internal mutator for double-edge swaps; keeps neighbor lists sorted.
struct GraphSurgeon {
  static void replace(CubicGraph& g, int v, int before, int after) {
    const int d = g.deg_[v];
    for (int i = 0; i < d; ++i) {
      if (g.adj_[v][i] == before) {
        g.adj_[v][i] = after;
        break;
      }
    }
    std::sort(g.adj_[v].begin(), g.adj_[v].begin() + d);
  }
};

namespace {

// Rotates the smallest vertex to the front and fixes the direction so equal
// cycles compare equal; matches the form emitted by short_cycles.
std::vector<int> canonical_cycle(std::vector<int> cycle) {
  const auto mi = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), mi, cycle.end());
  if (cycle[1] > cycle.back()) std::reverse(cycle.begin() + 1, cycle.end());
  return cycle;
}

// Appends every simple cycle of length < bound through the existing edge
// (x, y), i.e. simple x-to-y paths of at most bound-2 edges avoiding the edge
// itself. `on_path` must be all-false of size n and is restored on return.
void cycles_through_edge(const CubicGraph& g, int x, int y, int bound, std::vector<char>& on_path,
                         std::vector<std::vector<int>>& out) {
  std::vector<int> stack{x}, slot{0};
  on_path[x] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    if (slot.back() >= g.degree(u)) {
      on_path[u] = 0;
      stack.pop_back();
      slot.pop_back();
      continue;
    }
    const int w = g.neighbors(u)[slot.back()++];
    if (u == x && w == y) continue;  // the closing edge itself
    if (w == y) {
      if (stack.size() >= 2) {
        std::vector<int> cycle = stack;
        cycle.push_back(y);
        out.push_back(canonical_cycle(std::move(cycle)));
      }
      continue;
    }
    if (!on_path[w] && static_cast<int>(stack.size()) + 1 <= bound - 2) {
      stack.push_back(w);
      slot.push_back(0);
      on_path[w] = 1;
    }
  }
}

bool cycle_uses_edge(const std::vector<int>& cycle, int a, int b) {
  const int len = static_cast<int>(cycle.size());
  for (int i = 0; i < len; ++i) {
    const int u = cycle[i], v = cycle[(i + 1) % len];
    if ((u == a && v == b) || (u == b && v == a)) return true;
  }
  return false;
}

}  // namespace

BoostResult boost_girth(const CubicGraph& g, int target_girth, long max_proposals, uint64_t seed) {
  if (target_girth < 3) throw PreconditionError("target girth must be at least 3");
  if (!g.is_cubic()) throw PreconditionError("girth boosting requires a cubic graph");
  BoostResult res;
  res.graph = g;
  const int n = res.graph.vertex_count();
  Rng rng(seed);

  // The list of all cycles shorter than the target is kept current across
  // swaps: a swap only touches cycles through the two removed edges (gone)
  // and through the two added edges (enumerated locally), so each proposal
  // recounts a small neighborhood instead of the whole graph.
  std::vector<std::vector<int>> cycles = short_cycles(res.graph, target_girth);
  std::vector<char> scratch(static_cast<size_t>(n), 0);

  while (!cycles.empty() && res.proposals < max_proposals) {
    ++res.proposals;
    // One endpoint pair comes from a random edge of a random short cycle, the
    // other from a uniform half-edge; orientation of the second pick doubles
    // as the pairing coin.
    const auto& cyc = cycles[uniform_below(rng, cycles.size())];
    const int pos = static_cast<int>(uniform_below(rng, cyc.size()));
    const int a = cyc[pos], b = cyc[(pos + 1) % static_cast<int>(cyc.size())];
    const int c = static_cast<int>(uniform_below(rng, static_cast<uint64_t>(n)));
    const int d = res.graph.neighbors(c)[uniform_below(rng, 3)];
    if (a == c || a == d || b == c || b == d) continue;
    if (res.graph.has_edge(a, c) || res.graph.has_edge(b, d)) continue;

    GraphSurgeon::replace(res.graph, a, b, c);
    GraphSurgeon::replace(res.graph, c, d, a);
    GraphSurgeon::replace(res.graph, b, a, d);
    GraphSurgeon::replace(res.graph, d, c, b);

    std::vector<std::vector<int>> added;
    cycles_through_edge(res.graph, a, c, target_girth, scratch, added);
    cycles_through_edge(res.graph, b, d, target_girth, scratch, added);
    std::sort(added.begin(), added.end());
    added.erase(std::unique(added.begin(), added.end()), added.end());

    long removed = 0;
    for (const auto& cycle : cycles)
      if (cycle_uses_edge(cycle, a, b) || cycle_uses_edge(cycle, c, d)) ++removed;

    if (static_cast<long>(added.size()) < removed) {
      ++res.steps;
      std::vector<std::vector<int>> next;
      next.reserve(cycles.size());
      for (auto& cycle : cycles)
        if (!cycle_uses_edge(cycle, a, b) && !cycle_uses_edge(cycle, c, d))
          next.push_back(std::move(cycle));
      for (auto& cycle : added) next.push_back(std::move(cycle));
      cycles = std::move(next);
    } else {
      GraphSurgeon::replace(res.graph, a, c, b);
      GraphSurgeon::replace(res.graph, c, a, d);
      GraphSurgeon::replace(res.graph, b, d, a);
      GraphSurgeon::replace(res.graph, d, b, c);
    }
  }

  res.reached = cycles.empty();
  const GirthReport report = girth(res.graph);
  res.achieved_girth = report.girth.value_or(0);
  return res;
}

namespace {

CubicGraph lcf_graph(int n, std::initializer_list<int> pattern) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    edges.emplace_back(std::min(i, j), std::max(i, j));
  }
  const auto* pat = pattern.begin();
  const int period = static_cast<int>(pattern.size());
  for (int i = 0; i < n; ++i) {
    const int j = ((i + pat[i % period]) % n + n) % n;
    edges.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return CubicGraph::from_edges(n, edges);
}

}  // namespace

CubicGraph named_graph(std::string_view name) {
  if (name == "k4") {
    const std::pair<int, int> e[] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    return CubicGraph::from_edges(4, e);
  }
  if (name == "prism") {
    // Hexagonal prism: two 6-cycles joined by a perfect matching.
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 6; ++i) {
      const int j = (i + 1) % 6;
      e.emplace_back(std::min(i, j), std::max(i, j));
      e.emplace_back(std::min(i + 6, j + 6), std::max(i + 6, j + 6));
      e.emplace_back(i, i + 6);
    }
    return CubicGraph::from_edges(12, e);
  }
  if (name == "petersen") {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) {
      const int j = (i + 1) % 5;
      e.emplace_back(std::min(i, j), std::max(i, j));  // outer pentagon
      e.emplace_back(i, i + 5);                        // spokes
      const int k = (i + 2) % 5;
      e.emplace_back(std::min(i + 5, k + 5), std::max(i + 5, k + 5));  // pentagram
    }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return CubicGraph::from_edges(10, e);
  }
  if (name == "heawood") return lcf_graph(14, {5, -5});
  if (name == "pappus") return lcf_graph(18, {5, 7, -7, 7, -7, -5});
  if (name == "mcgee") return lcf_graph(24, {12, 7, -7});
  if (name == "tutte_coxeter") return lcf_graph(30, {-13, -9, 7, -7, 9, 13});
  throw PreconditionError("unknown named graph '" + std::string(name) +
                          "'; available: " + [] {
                            std::string all;
                            for (const auto& s : named_graph_catalog()) {
                              if (!all.empty()) all += ", ";
                              all += s;
                            }
                            return all;
                          }());
}

std::vector<std::string> named_graph_catalog() {
  return {"heawood", "k4", "mcgee", "pappus", "petersen", "prism", "tutte_coxeter"};
}

namespace {

// Splits a line into whitespace-separated integer fields; any non-integer
// token is a parse error tagged with the 1-based line number.
std::vector<long> parse_int_fields(std::string_view line, int line_no) {
  std::vector<long> fields;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    long value = 0;
    const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
    if (ec != std::errc{} || ptr != line.data() + j)
      throw ParseError("line " + std::to_string(line_no) + ": expected an integer, got '" +
                       std::string(line.substr(i, j - i)) + "'");
    fields.push_back(value);
    i = j;
  }
  return fields;
}

}  // namespace

CubicGraph load_edge_list(std::string_view text) {
  bool have_header = false;
  long n = 0, m = 0;
  std::vector<std::pair<int, int>> edges;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t eol = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;  // blank
    if (line[first] == '#') continue;               // comment

    const std::vector<long> fields = parse_int_fields(line, line_no);
    if (!have_header) {
      if (fields.size() != 2)
        throw ParseError("line " + std::to_string(line_no) +
                         ": header must be 'n m' (two integers)");
      n = fields[0];
      m = fields[1];
      if (n < 0 || m < 0)
        throw ParseError("line " + std::to_string(line_no) + ": negative count in header");
      have_header = true;
      continue;
    }
    if (fields.size() != 2)
      throw ParseError("line " + std::to_string(line_no) + ": edge line must be 'u v'");
    const long u = fields[0], v = fields[1];
    if (static_cast<long>(edges.size()) == m)
      throw ParseError("line " + std::to_string(line_no) + ": more edges than the declared " +
                       std::to_string(m));
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw ParseError("line " + std::to_string(line_no) + ": endpoint out of range [0, " +
                       std::to_string(n) + ")");
    if (u >= v)
      throw ParseError("line " + std::to_string(line_no) + ": endpoints must satisfy u < v");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  if (!have_header) throw ParseError("missing 'n m' header line");
  if (static_cast<long>(edges.size()) != m)
    throw ParseError("edge list declares " + std::to_string(m) + " edges but contains " +
                     std::to_string(edges.size()));
  return CubicGraph::from_edges(static_cast<int>(n), edges);
}

std::string save_edge_list(const CubicGraph& g) {
  std::string out = std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()) + "\n";
  for (const auto& [u, v] : g.edges())
    out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

CubicGraph load_edge_list_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open edge list file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_edge_list(text);
}

void save_edge_list_file(const CubicGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write edge list file: " + path);
  out << save_edge_list(g);
  if (!out.flush()) throw PreconditionError("failed writing edge list file: " + path);
}

}  // namespace girthlab
