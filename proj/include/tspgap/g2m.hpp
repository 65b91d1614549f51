#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tspgap/instance.hpp"
#include "tspgap/rational.hpp"

namespace tspgap {

/// Edge multiset on K_n. `vertices` is the vertex set the object spans;
/// multiplicity is indexed like MetricInstance edges.
struct GraphicalTwoMatching {
  int n = 0;
  std::vector<VertexId> vertices;  // sorted
  std::vector<int> multiplicity;

  explicit GraphicalTwoMatching(int n_ = 0) : n(n_), multiplicity(static_cast<std::size_t>(n_) * (n_ - 1) / 2, 0) {}

  int& at(VertexId i, VertexId j) { return multiplicity[complete_edge_index(n, i, j)]; }
  int at(VertexId i, VertexId j) const { return multiplicity[complete_edge_index(n, i, j)]; }
  int degree(VertexId v) const;

  /// Adds every edge of `other` to this object and unions the vertex sets.
  void merge(const GraphicalTwoMatching& other);
};

struct G2MViolation {
  enum class Kind { kMultiplicity, kDegree, kSmallComponent, kStrayVertex };
  Kind kind;
  VertexId vertex = -1;
  int edge = -1;
  std::string message;
};

/// Multiplicities in {0,1,2}, degree 2 or 4 on the vertex set and 0 elsewhere,
/// every support component spanning at least three vertices.
std::optional<G2MViolation> validate_g2m(const GraphicalTwoMatching& g);

/// Disjoint simple cycles, each listed from its smallest vertex.
struct TwoMatching {
  int n = 0;
  std::vector<std::vector<VertexId>> cycles;

  std::vector<int> edges() const;  // instance edge indices
};

/// Cycle lengths at least three, vertex-disjoint, covering `vertices` exactly.
std::optional<std::string> validate_two_matching(const TwoMatching& t, const std::vector<VertexId>& vertices);

/// Shortcuts each component's Eulerian circuit (Hierholzer from the smallest
/// vertex, neighbours visited in increasing order, first occurrence kept).
/// Throws PreconditionError on non-metric instances or invalid input and
/// InvariantError if the cost increases.
TwoMatching shortcut(const GraphicalTwoMatching& g, const MetricInstance& inst);

Rat cost(const GraphicalTwoMatching& g, const MetricInstance& inst);
Rat cost(const TwoMatching& t, const MetricInstance& inst);

/// Two-matching as a G2M with every multiplicity 1.
GraphicalTwoMatching as_g2m(const TwoMatching& t);

}  // namespace tspgap
