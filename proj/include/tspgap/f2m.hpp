#pragma once

#include <vector>

#include "tspgap/instance.hpp"
#include "tspgap/rational.hpp"

namespace tspgap {

/// Values per instance edge (row-major upper triangle), each in {0, 1/2, 1},
/// with every vertex of degree exactly 2.
struct FractionalTwoMatching {
  std::vector<Rat> values;
  Rat objective;
};

/// Optimal basic solution of min c.x subject to x(delta(i)) = 2, 0 <= x <= 1.
/// Throws InvariantError if the vertex returned is not half-integral.
FractionalTwoMatching solve_f2m(const MetricInstance& inst);

/// Wraps externally supplied values after checking the type invariants.
/// Throws ValidationError naming the first offending edge or vertex.
FractionalTwoMatching make_f2m(const MetricInstance& inst, std::vector<Rat> values);

/// A maximal chain of value-1 edges between two cycle vertices. Vertices run
/// from the smaller endpoint id to the larger one.
struct F2MPath {
  std::vector<VertexId> vertices;
  std::vector<int> edges;  // instance edge indices, edges[k] joins vertices[k], vertices[k+1]
  std::vector<Rat> edge_costs;
  Rat cost;
  bool cut = false;

  int length() const { return static_cast<int>(edges.size()); }
  VertexId first() const { return vertices.front(); }
  VertexId last() const { return vertices.back(); }
};

/// An odd cycle of value-1/2 edges, starting at its smallest vertex.
struct HalfCycle {
  std::vector<VertexId> vertices;
  std::vector<int> edges;  // edges[k] joins vertices[k], vertices[k+1 mod size]
  std::vector<Rat> edge_costs;
  Rat cost;
};

struct FractionalComponent {
  std::vector<VertexId> vertices;  // sorted
  std::vector<HalfCycle> cycles;
  std::vector<F2MPath> paths;      // ordered by (first, last)
  Rat path_cost;                   // P
  Rat cycle_cost;                  // C, full cost of the half edges

  bool has_cut_path() const;
  /// Index into `paths` of the path ending at cycle vertex v.
  int path_at(VertexId v) const;
};

/// A cycle of value-1 edges, starting at its smallest vertex.
struct IntegerComponent {
  std::vector<VertexId> vertices;
  std::vector<int> edges;
  Rat cost;
};

struct F2MDecomposition {
  int n = 0;
  std::vector<IntegerComponent> integer_components;
  std::vector<FractionalComponent> fractional_components;
};

/// Splits the support into integer cycles and fractional components (odd
/// half-cycles joined by unit paths) and marks cut paths by bridge detection.
/// Throws InvariantError with a witness vertex when the support does not have
/// that structure.
F2MDecomposition decompose(const MetricInstance& inst, const FractionalTwoMatching& x);

bool has_cut_edge(const F2MDecomposition& d);

/// The per-edge values the decomposition describes.
std::vector<Rat> to_values(const F2MDecomposition& d);

}  // namespace tspgap
