#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tspgap/graph.hpp"
#include "tspgap/rational.hpp"

namespace tspgap {

/// Row-major upper-triangle index of edge {i,j} in the complete graph K_n.
int complete_edge_index(int n, VertexId i, VertexId j);
std::pair<VertexId, VertexId> complete_edge_endpoints(int n, int index);

/// Complete undirected graph with exact positive symmetric costs.
///
/// Edges of the complete graph are indexed row-major over the upper triangle:
/// (0,1), (0,2), ..., (0,n-1), (1,2), ... Every per-edge vector in the
/// library (LP values, multiplicities) uses this indexing.
class MetricInstance {
 public:
  MetricInstance(int n, std::vector<Rat> upper_triangle);

  int size() const { return n_; }
  int num_edges() const { return static_cast<int>(costs_.size()); }
  bool metric() const { return metric_; }

  int edge_index(VertexId i, VertexId j) const;
  std::pair<VertexId, VertexId> edge_endpoints(int index) const { return endpoints_.at(index); }
  const Rat& cost(VertexId i, VertexId j) const { return costs_[edge_index(i, j)]; }
  const Rat& edge_cost(int index) const { return costs_.at(index); }
  const std::vector<Rat>& costs() const { return costs_; }

  /// Cost of a per-edge vector (LP values, multiplicities, ...).
  Rat weighted_cost(std::span<const Rat> values) const;

  bool operator==(const MetricInstance& other) const {
    return n_ == other.n_ && costs_ == other.costs_;
  }

 private:
  int n_;
  std::vector<Rat> costs_;
  std::vector<std::pair<VertexId, VertexId>> endpoints_;
  bool metric_;
};

struct Triple {
  VertexId i;
  VertexId k;
  VertexId j;
  bool operator==(const Triple&) const = default;
};

/// Every (i,k,j) with i < j, k distinct from both, and c(i,j) > c(i,k) + c(k,j).
std::vector<Triple> check_triangle_inequality(const MetricInstance& inst);

/// JSON ({"n":..,"costs":[[num,den],...]}) or TSPLIB (EXPLICIT / EUC_2D).
MetricInstance parse_instance(std::string_view text);
MetricInstance parse_json_instance(std::string_view text);
MetricInstance parse_tsplib(std::string_view text);

/// Canonical JSON text; parse_instance(instance_to_json(x)) == x.
std::string instance_to_json(const MetricInstance& inst);

/// 64-bit FNV-1a of the canonical JSON text, as 16 hex digits.
std::string instance_digest(const MetricInstance& inst);

struct WeightedPair {
  VertexId a;
  VertexId b;
  Rat weight;
};

/// Shortest-path distances of a connected positive graph as a complete instance.
MetricInstance metric_closure(int n, std::span<const WeightedPair> edges);

enum class NonEdgeCost {
  kMetricClosure,  // shortest path in the unit-cost support graph
  kTwo,            // every non-edge costs 2
};

struct WorstCaseFamily {
  int ell;
  MetricInstance instance;
  std::vector<Rat> certificate;  // half on triangle edges, one on path edges
  std::vector<std::pair<VertexId, VertexId>> support_edges;
};

/// Two triangles a0a1a2, b0b1b2 joined by three vertex-disjoint paths of ell
/// unit edges, path i joining a_i to b_i. Vertices 0..2 are a_i, 3..5 are b_i,
/// path i's interior vertices are 6 + i*(ell-1) + k.
WorstCaseFamily gen_worst_case_family(int ell, NonEdgeCost non_edges = NonEdgeCost::kMetricClosure);

/// Deterministic in (n, seed); always metric.
MetricInstance gen_random_metric(int n, std::uint64_t seed);

}  // namespace tspgap
