#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tspgap/graph.hpp"
#include "tspgap/rational.hpp"

namespace tspgap {

struct PerfectMatching {
  std::vector<EdgeId> edges;  // sorted
  Rat total_cost;
};

/// Minimum-cost perfect matching (costs of any sign). Among optimal
/// matchings the lexicographically smallest sorted edge-id list is returned.
/// Throws NoPerfectMatchingError whose witness lists the vertices left
/// exposed by a maximum-cardinality matching.
PerfectMatching min_cost_perfect_matching(const MultiGraph& g);

/// Exhaustive search with the same tie-break. At most 16 vertices.
PerfectMatching brute_force_perfect_matching(const MultiGraph& g);

/// Throws InvariantError unless every vertex is covered exactly once and
/// total_cost matches the member costs.
void check_perfect_matching(const MultiGraph& g, const PerfectMatching& m);

struct PolytopeViolation {
  enum class Kind { kNegative, kDegree, kOddSet };
  Kind kind;
  EdgeId edge = -1;             // kNegative
  VertexId vertex = -1;         // kDegree
  std::vector<VertexId> set;    // kOddSet, sorted
  Rat lhs;                      // x(e), x(delta(v)) or x(delta(S))

  std::string describe() const;
};

/// Checks x >= 0, x(delta(v)) = 1 for every v and x(delta(S)) >= 1 for every
/// odd S by full enumeration. Returns the first violation found in that
/// order. At most 24 vertices.
std::optional<PolytopeViolation> check_matching_polytope_point(const MultiGraph& g,
                                                               const std::vector<Rat>& x);

struct NpBoundResult {
  PerfectMatching matching;
  Rat bound;  // one third of the total edge cost
  bool bound_holds = false;
};

/// Min-cost perfect matching of a cubic 2-edge-connected multigraph compared
/// against a third of its total cost. Throws PreconditionError naming the
/// first non-cubic vertex or the first bridge.
NpBoundResult np_bound_check(const MultiGraph& g);

}  // namespace tspgap
