#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tspgap/instance.hpp"
#include "tspgap/rational.hpp"

namespace tspgap {

struct SubtourSolution {
  std::vector<Rat> values;  // per instance edge
  Rat objective;
  std::vector<std::vector<VertexId>> cut_pool;  // sets S added, in order
  std::vector<Rat> objective_trace;             // LP value after each round
};

/// Exact optimum of min c.x subject to x(delta(i)) = 2, x(delta(S)) >= 2 and
/// 0 <= x <= 1, found by cutting planes: one violated global minimum cut of
/// the support is added per round until the minimum cut reaches 2.
SubtourSolution solve_subtour_lp(const MetricInstance& inst);

struct MinCut {
  std::vector<VertexId> side;  // sorted, never contains vertex 0
  Rat value;
};

/// Stoer-Wagner global minimum cut of a graph on vertices 0..n-1 with
/// nonnegative weights (parallel pairs are summed). A disconnected graph
/// yields a zero cut.
MinCut separate_min_cut(int n, std::span<const WeightedPair> edges);

/// Minimum cut of the support of x on K_n.
MinCut separate_min_cut(const MetricInstance& inst, const std::vector<Rat>& x);

struct SubtourViolation {
  enum class Kind { kBound, kDegree, kCut };
  Kind kind;
  int edge = -1;                // kBound
  VertexId vertex = -1;         // kDegree
  std::vector<VertexId> set;    // kCut, sorted
  Rat lhs;
  std::string describe() const;
};

/// Checks bounds and degrees directly and every cut x(delta(S)) >= 2 by
/// enumerating the sets S that omit vertex n-1. At most 16 vertices.
std::optional<SubtourViolation> verify_subtour_feasible(const MetricInstance& inst, const std::vector<Rat>& x);

}  // namespace tspgap
