#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "girthlab/errors.hpp"
#include "girthlab/rng.hpp"

namespace girthlab {

// Simple undirected graph with maximum degree three. Immutable once built:
// all mutating algorithms (generation, girth boosting) return new graphs.
class CubicGraph {
 public:
  CubicGraph() = default;

  // Builds a graph from an edge list and validates it. Throws
  // PreconditionError on out-of-range endpoints, self-loops, parallel edges,
  // or a vertex of degree greater than three.
  static CubicGraph from_edges(int n, std::span<const std::pair<int, int>> edges);

  int vertex_count() const { return static_cast<int>(deg_.size()); }
  int edge_count() const { return m_; }
  int degree(int v) const { return deg_[v]; }

  // Neighbors of v, sorted ascending.
  std::span<const int> neighbors(int v) const {
    return std::span<const int>(adj_[v].data(), static_cast<size_t>(deg_[v]));
  }

  bool has_edge(int u, int v) const {
    for (int w : neighbors(u))
      if (w == v) return true;
    return false;
  }

  // True when every vertex has degree exactly three.
  bool is_cubic() const;

  // All edges as (u, v) with u < v, sorted lexicographically.
  std::vector<std::pair<int, int>> edges() const;

 private:
  std::vector<std::array<int, 3>> adj_;
  std::vector<int> deg_;
  int m_ = 0;

  friend struct GraphSurgeon;
};

struct GirthReport {
  std::optional<int> girth;      // empty when the graph is a forest
  std::optional<int> odd_girth;  // empty when the graph is bipartite
  std::vector<int> girth_cycle;  // witness cycle (vertex sequence), empty iff no cycle
  std::vector<int> odd_girth_cycle;  // witness odd cycle, empty iff bipartite
};

// Exact girth and odd girth with witness cycles. Girth comes from a
// depth-capped breadth-first search from every vertex (the first non-tree
// edge closes a shortest cycle through the root); odd girth from the same
// scan on the bipartite double cover.
GirthReport girth(const CubicGraph& g);

// All simple cycles of length < bound, each reported once as a canonical
// vertex sequence (smallest vertex first, smaller neighbor second).
std::vector<std::vector<int>> short_cycles(const CubicGraph& g, int bound);

// Random cubic graph by the pairing model: a uniform perfect matching on 3n
// half-edge points, resampled until the projected graph is simple.
// Deterministic for a fixed seed. Requires even n >= 4.
CubicGraph generate_random_cubic(int n, uint64_t seed);

struct BoostResult {
  CubicGraph graph;
  int achieved_girth = 0;  // exact girth of `graph`
  long steps = 0;          // accepted swaps
  long proposals = 0;      // attempted swaps
  bool reached = false;    // achieved_girth >= the requested target
};

// Raises the girth of a cubic graph by random double-edge swaps, accepting a
// swap only when it strictly decreases the number of cycles shorter than
// target_girth. Stops when no short cycle remains or after max_proposals
// attempts; failure to reach the target is reported, not thrown. The degree
// sequence, vertex count, and simplicity are preserved.
BoostResult boost_girth(const CubicGraph& g, int target_girth, long max_proposals,
                        uint64_t seed);

// Fixed catalog of small named graphs used as deterministic fixtures:
// k4, prism (hexagonal prism, 12 vertices), petersen, heawood, pappus,
// mcgee, tutte_coxeter. Throws PreconditionError for unknown names.
CubicGraph named_graph(std::string_view name);

// Names accepted by named_graph, sorted.
std::vector<std::string> named_graph_catalog();

// Edge-list text format: optional '#' comment lines, then "n m", then m
// lines "u v" with 0-based u < v. Parse errors carry the 1-based line number.
CubicGraph load_edge_list(std::string_view text);
std::string save_edge_list(const CubicGraph& g);
CubicGraph load_edge_list_file(const std::string& path);
void save_edge_list_file(const CubicGraph& g, const std::string& path);

}  // namespace girthlab
