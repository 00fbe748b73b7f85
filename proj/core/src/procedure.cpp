#include "girthlab/procedure.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "girthlab/errors.hpp"

namespace girthlab {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw PreconditionError(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
}

}  // namespace

ColorState first_round(const CubicGraph& g, double p1, Rng& rng) {
  check_probability(p1, "p1");
  const int n = g.vertex_count();
  if (n == 0) throw PreconditionError("cannot run the procedure on an empty graph");

  std::vector<char> active(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) active[v] = bernoulli(rng, p1) ? 1 : 0;

  ColorState s;
  s.color.assign(static_cast<size_t>(n), Color::white);
  s.round = 1;
  for (int v = 0; v < n; ++v) {
    bool active_neighbor = false;
    for (int w : g.neighbors(v)) active_neighbor = active_neighbor || active[w] != 0;
    if (active_neighbor)
      s.color[v] = Color::blue;
    else if (active[v])
      s.color[v] = Color::red;
  }

  s.white_degree.assign(static_cast<size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    int d = 0;
    for (int w : g.neighbors(v)) d += s.color[w] == Color::white ? 1 : 0;
    s.white_degree[v] = d;
  }
  for (int v = 0; v < n; ++v) {
    if (s.color[v] == Color::white)
      ++s.whites;
    else if (s.color[v] == Color::blue)
      ++s.blues;
    else
      ++s.reds;
  }
  return s;
}

namespace {

int slot_of(const CubicGraph& g, int v, int w) {
  const auto nb = g.neighbors(v);
  for (int i = 0; i < static_cast<int>(nb.size()); ++i)
    if (nb[i] == w) return i;
  throw std::logic_error("internal: missing adjacency slot");
}

}  // namespace

std::vector<WhitePath> classify_paths(const CubicGraph& g, const ColorState& state) {
  const int n = g.vertex_count();
  std::vector<WhitePath> paths;
  // Marks white-white edges already placed on a path, per (vertex, slot).
  std::vector<std::array<char, 3>> used(static_cast<size_t>(n), {0, 0, 0});

  auto mark = [&](int u, int v) {
    used[u][slot_of(g, u, v)] = 1;
    used[v][slot_of(g, v, u)] = 1;
  };

  // Walks from an endpoint through white-degree-2 inner vertices until the
  // next endpoint; the walk can return to its own starting vertex.
  auto walk_from = [&](int v, int first) {
    std::vector<int> seq{v};
    mark(v, first);
    int prev = v, cur = first;
    while (state.white_degree[cur] == 2) {
      seq.push_back(cur);
      int nxt = -1;
      for (int t : g.neighbors(cur))
        if (t != prev && state.color[t] == Color::white) {
          nxt = t;
          break;
        }
      mark(cur, nxt);
      prev = cur;
      cur = nxt;
    }
    seq.push_back(cur);
    return seq;
  };

  for (int v = 0; v < n; ++v) {
    if (state.color[v] != Color::white) continue;
    const int wd = state.white_degree[v];
    if (wd != 1 && wd != 3) continue;  // endpoints only
    for (int si = 0; si < g.degree(v); ++si) {
      const int w = g.neighbors(v)[si];
      if (state.color[w] != Color::white || used[v][si]) continue;
      std::vector<int> seq = walk_from(v, w);
      WhitePath p;
      const int a = state.white_degree[seq.front()], b = state.white_degree[seq.back()];
      if (a == 1 && b == 1)
        p.type = PathType::one_one;
      else if (a == 3 && b == 3)
        p.type = PathType::three_three;
      else
        p.type = PathType::one_three;
      // Canonical orientation: 1-3 paths must start at the degree-1 end (the
      // coloring rule is anchored there); symmetric types take the
      // lexicographically smaller direction.
      if (p.type == PathType::one_three) {
        if (a != 1) std::reverse(seq.begin(), seq.end());
      } else {
        std::vector<int> rev(seq.rbegin(), seq.rend());
        if (rev < seq) seq = std::move(rev);
      }
      p.vertices = std::move(seq);
      paths.push_back(std::move(p));
    }
  }

  // Whatever white structure remains is a cycle of white-degree-2 vertices.
  for (int v = 0; v < n; ++v) {
    if (state.color[v] != Color::white || state.white_degree[v] != 2) continue;
    int first = -1;
    bool touched = false;
    for (int si = 0; si < g.degree(v); ++si) {
      const int w = g.neighbors(v)[si];
      if (state.color[w] != Color::white) continue;
      touched = touched || used[v][si] != 0;
      if (first < 0) first = w;
    }
    if (touched || first < 0) continue;
    std::vector<int> cyc{v};
    mark(v, first);
    int prev = v, cur = first;
    while (cur != v) {
      cyc.push_back(cur);
      int nxt = -1;
      for (int t : g.neighbors(cur))
        if (t != prev && state.color[t] == Color::white) {
          nxt = t;
          break;
        }
      mark(cur, nxt);
      prev = cur;
      cur = nxt;
    }
    // v is the smallest vertex of the cycle (smaller ones were consumed
    // first); fix the direction toward its smaller neighbor.
    if (cyc.size() >= 3 && cyc[1] > cyc.back()) std::reverse(cyc.begin() + 1, cyc.end());
    WhitePath p;
    p.type = PathType::cycle;
    p.vertices = std::move(cyc);
    paths.push_back(std::move(p));
  }

  std::sort(paths.begin(), paths.end(), [](const WhitePath& x, const WhitePath& y) {
    const int kx = std::min(x.vertices.front(), x.vertices.back());
    const int ky = std::min(y.vertices.front(), y.vertices.back());
    if (kx != ky) return kx < ky;
    return x.vertices < y.vertices;
  });
  return paths;
}

void run_round(const CubicGraph& g, ColorState& state, double p2, Rng& rng, PathOrder order) {
  check_probability(p2, "p2");
  if (state.round < 1) throw PreconditionError("run_round requires a completed first round");
  if (state.color.size() != static_cast<size_t>(g.vertex_count()))
    throw PreconditionError("state does not match the graph");

  std::vector<int> red_writes, blue_writes;

  // Isolated whites turn red outright; no randomness involved.
  const int n = g.vertex_count();
  for (int v = 0; v < n; ++v)
    if (state.color[v] == Color::white && state.white_degree[v] == 0) red_writes.push_back(v);

  const std::vector<WhitePath> paths = classify_paths(g, state);

  auto process = [&](const WhitePath& p) {
    const auto& seq = p.vertices;
    const int len = static_cast<int>(seq.size());
    switch (p.type) {
      case PathType::one_one: {
        const bool from_back = fair_coin(rng);
        for (int i = 0; i < len; ++i) {
          const int v = from_back ? seq[len - 1 - i] : seq[i];
          (i % 2 == 0 ? red_writes : blue_writes).push_back(v);
        }
        break;
      }
      case PathType::one_three: {
        for (int i = 0; i + 1 < len; ++i)
          (i % 2 == 0 ? red_writes : blue_writes).push_back(seq[i]);
        if ((len - 1) % 2 == 1) blue_writes.push_back(seq[len - 1]);
        break;
      }
      case PathType::three_three: {
        bool any = false;
        for (int i = 1; i + 1 < len; ++i) any = bernoulli(rng, p2) || any;
        if (!any) break;  // paths with no inner vertices are never active
        const bool from_back = fair_coin(rng);
        for (int i = 0; i + 1 < len; ++i) {
          const int v = from_back ? seq[len - 1 - i] : seq[i];
          (i % 2 == 0 ? blue_writes : red_writes).push_back(v);
        }
        if ((len - 1) % 2 == 0) blue_writes.push_back(from_back ? seq[0] : seq[len - 1]);
        break;
      }
      case PathType::cycle: {
        std::vector<int> activated;
        for (int i = 0; i < len; ++i)
          if (bernoulli(rng, p2)) activated.push_back(i);
        if (activated.empty()) break;
        const int begin = activated[uniform_below(rng, activated.size())];
        for (int i = 0; i < len; ++i) {
          const int v = seq[(begin + i) % len];
          (i % 2 == 0 ? blue_writes : red_writes).push_back(v);
        }
        break;
      }
    }
  };

  if (order == PathOrder::canonical) {
    for (const auto& p : paths) process(p);
  } else {
    for (auto it = paths.rbegin(); it != paths.rend(); ++it) process(*it);
  }

  // Apply the write-set. All targets were white in the snapshot; a red write
  // hitting a recolored vertex or a blue write hitting a red one would mean
  // two paths claimed the same vertex incompatibly, which the alternation
  // rules exclude.
  std::vector<int> newly;
  newly.reserve(red_writes.size() + blue_writes.size());
  for (int v : red_writes) {
    if (state.color[v] != Color::white)
      throw std::logic_error("internal: duplicate recoloring of vertex " + std::to_string(v));
    state.color[v] = Color::red;
    newly.push_back(v);
  }
  for (int v : blue_writes) {
    if (state.color[v] == Color::red)
      throw std::logic_error("internal: red and blue write collide at vertex " +
                             std::to_string(v));
    if (state.color[v] == Color::blue) continue;  // repeated blue writes are expected
    state.color[v] = Color::blue;
    newly.push_back(v);
  }
  for (int v : red_writes)
    for (int w : g.neighbors(v))
      if (state.color[w] == Color::red)
        throw std::logic_error("internal: adjacent red vertices " + std::to_string(v) + ", " +
                               std::to_string(w));

  for (int v : newly)
    for (int w : g.neighbors(v)) --state.white_degree[w];

  long reds_added = static_cast<long>(red_writes.size());
  state.reds += reds_added;
  state.blues += static_cast<long>(newly.size()) - reds_added;
  state.whites -= static_cast<long>(newly.size());
  ++state.round;
}

RoundAggregates aggregate(const CubicGraph& g, const ColorState& state) {
  const int n = g.vertex_count();
  RoundAggregates a;
  a.k = state.round;
  a.frac_white = static_cast<double>(state.whites) / n;
  a.frac_blue = static_cast<double>(state.blues) / n;
  a.frac_red = static_cast<double>(state.reds) / n;

  long wcount[4] = {0, 0, 0, 0};
  long qcount[3] = {0, 0, 0};
  long white_total = 0, endpoint_total = 0;
  for (int v = 0; v < n; ++v) {
    if (state.color[v] != Color::white) continue;
    ++white_total;
    ++wcount[state.white_degree[v]];
    for (int w : g.neighbors(v)) {
      if (state.color[w] != Color::white) continue;
      // ordered white-white edge (v, w): v is the sampled endpoint
      ++qcount[state.white_degree[v] - 1];
      ++endpoint_total;
    }
  }
  for (int i = 0; i < 4; ++i)
    a.wdeg_hist[i] = white_total > 0 ? static_cast<double>(wcount[i]) / white_total : 0.0;
  for (int i = 0; i < 3; ++i)
    a.qdeg_hist[i] = endpoint_total > 0 ? static_cast<double>(qcount[i]) / endpoint_total : 0.0;
  return a;
}

// A state with every white vertex having three white neighbors is frozen:
// there is no degree-0 white to recolor and every maximal white path is a
// single hub-to-hub edge with no interior vertex, so no later round can draw
// an activation or color anything.
static bool frozen(const ColorState& state) {
  const int n = static_cast<int>(state.color.size());
  for (int v = 0; v < n; ++v)
    if (state.color[v] == Color::white && state.white_degree[v] != 3) return false;
  return true;
}

SimResult run_procedure(const CubicGraph& g, const SimParams& params, Rng& rng) {
  if (params.rounds < 1)
    throw PreconditionError("rounds must be at least 1, got " + std::to_string(params.rounds));
  SimResult out;
  out.state = first_round(g, params.p1, rng);
  out.per_round.push_back(aggregate(g, out.state));
  while (out.state.round < params.rounds && out.state.whites > 0 && !frozen(out.state)) {
    run_round(g, out.state, params.p2, rng);
    out.per_round.push_back(aggregate(g, out.state));
  }
  return out;
}

}  // namespace girthlab
