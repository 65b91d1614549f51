#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tspgap/rational.hpp"

namespace tspgap {

using VertexId = int;
using EdgeId = int;

struct Edge {
  EdgeId id;
  VertexId a;
  VertexId b;
  Rat cost;

  VertexId other(VertexId v) const { return v == a ? b : a; }
};

/// Undirected multigraph on vertices 0..n-1 with rational edge costs.
/// Edge ids are dense and equal to insertion order. Parallel edges are
/// allowed; self-loops are not.
class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(int num_vertices);

  VertexId add_vertex();
  EdgeId add_edge(VertexId a, VertexId b, Rat cost);

  int num_vertices() const { return static_cast<int>(incidence_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_.at(id); }
  std::span<const EdgeId> incident(VertexId v) const { return incidence_.at(v); }
  int degree(VertexId v) const { return static_cast<int>(incidence_.at(v).size()); }
  Rat total_cost() const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incidence_;
};

/// Edges whose removal disconnects their component, in increasing id order.
/// Parallel edges are never bridges.
std::vector<EdgeId> find_bridges(const MultiGraph& g);

/// Component label per vertex, labels numbered by smallest member.
std::vector<int> connected_components(const MultiGraph& g);
int count_components(const MultiGraph& g);

/// First vertex whose degree is not 3, if any.
std::optional<VertexId> first_non_cubic_vertex(const MultiGraph& g);

/// Random simple cubic 2-edge-connected graph on n vertices (n even, n >= 4)
/// from the configuration model with rejection. Edge costs are random
/// rationals p/q with p in [-20, 20] and q in [1, 6]. Deterministic in seed.
MultiGraph gen_random_cubic(int n, std::uint64_t seed);

}  // namespace tspgap
