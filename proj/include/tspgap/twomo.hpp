#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tspgap/g2m.hpp"
#include "tspgap/graph.hpp"
#include "tspgap/instance.hpp"
#include "tspgap/matching.hpp"
#include "tspgap/rational.hpp"
#include "tspgap/subtour.hpp"

namespace tspgap {

/// 2-matching with optional vertices: mandatory vertices take degree 2,
/// optional ones degree 0 or 2. Edge costs live on `graph`.
struct TwoMOInstance {
  MultiGraph graph;
  std::vector<bool> optional;  // per vertex
  // Filled by split_graph: the metric instance the split came from.
  int original_size = 0;
  std::vector<VertexId> original_vertex;  // per vertex
  std::vector<int> instance_edge;         // per edge

  int num_vertices() const { return graph.num_vertices(); }
  int num_edges() const { return graph.num_edges(); }
  int num_mandatory() const;
};

/// Vertex i is split into a mandatory copy i and an optional copy n+i. Each
/// instance edge {i,j}, i < j, becomes the three edges (i,j), (i,n+j) and
/// (n+i,j) with ids 3t, 3t+1, 3t+2, all carrying c(i,j). Optional copies are
/// never adjacent to each other.
TwoMOInstance split_graph(const MetricInstance& inst);

/// The same construction restricted to the listed instance edges (sorted,
/// distinct); the t-th listed edge yields ids 3t..3t+2.
TwoMOInstance split_graph(const MetricInstance& inst, const std::vector<int>& instance_edges);

/// K_n with every vertex mandatory, edge ids equal to instance edge indices.
TwoMOInstance all_mandatory(const MetricInstance& inst);

/// y = (1-alpha)x on (i,j), alpha x on (i,n+j) and (n+i,j), for a split
/// instance. x is indexed by instance edge.
std::vector<Rat> map_subtour_to_2mo(const TwoMOInstance& split, const std::vector<Rat>& x, const Rat& alpha);

Rat point_cost(const TwoMOInstance& inst, const std::vector<Rat>& y);

struct TwoMOViolation {
  enum class Kind { kBound, kMandatoryDegree, kOptionalDegree, kOddMatching };
  Kind kind = Kind::kBound;
  EdgeId edge = -1;              // kBound
  VertexId vertex = -1;          // degree kinds
  std::vector<VertexId> set;     // kOddMatching: S, sorted
  std::vector<EdgeId> matching;  // kOddMatching: F, sorted
  Rat lhs;                       // y(e), degree, or y(delta(S) - F) + |F| - y(F)
  std::string describe() const;
};

struct TwoMOCheckStats {
  long long sets = 0;
  long long matchings = 0;  // odd matchings whose constraint was evaluated
};

/// Bounds and degree constraints directly, then for every S that omits the
/// last vertex and every odd matching F inside delta(S), whether
/// y(delta(S) - F) + sum over F of (1 - y(e)) >= 1. The matching search is a
/// depth-first enumeration that skips branches whose best completion provably
/// stays >= 1, unless `exhaustive` asks for every odd matching to be
/// evaluated. At most 20 vertices.
std::optional<TwoMOViolation> check_2mo_polytope(const TwoMOInstance& inst, const std::vector<Rat>& y,
                                                 TwoMOCheckStats* stats = nullptr, bool exhaustive = false);

/// Integral 2MO solution, 0/1 per edge.
struct TwoMOSolution {
  std::vector<int> chosen;
};

std::optional<std::string> validate_2mo_solution(const TwoMOInstance& inst, const TwoMOSolution& sol);
Rat cost(const TwoMOInstance& inst, const TwoMOSolution& sol);

/// Perfect-matching reduction. 2MO vertex v becomes v' = v and v'' = N + v.
/// 2MO edge e = (a,b) gets ports pa = 2N + 2e and pb = 2N + 2e + 1 and the
/// five edges 5e..5e+4: (a',pa), (a'',pa), (pa,pb), (b',pb), (b'',pb).
/// Optional vertices then get a link (v',v'') in increasing vertex order.
/// The four attachment edges cost c(e)/2 and the rest cost 0, so a perfect
/// matching costs exactly as much as the 2MO solution it decodes to.
struct MatchingReduction {
  MultiGraph graph;
  int num_2mo_vertices = 0;
  std::vector<EdgeId> optional_link;  // per 2MO vertex, -1 when mandatory

  VertexId prime(VertexId v) const { return v; }
  VertexId double_prime(VertexId v) const { return num_2mo_vertices + v; }
  VertexId port(EdgeId e, int side) const { return 2 * num_2mo_vertices + 2 * e + side; }
  static EdgeId attach_edge(EdgeId e, int side, int copy) { return 5 * e + (side == 0 ? copy : 3 + copy); }
  static EdgeId port_edge(EdgeId e) { return 5 * e + 2; }
};

MatchingReduction reduce_2mo_to_matching(const TwoMOInstance& inst);

/// y/2 on attachment edges, 1 - y on port edges and 1 - y(delta(v))/2 on
/// optional links.
std::vector<Rat> map_point_to_matching_polytope(const TwoMOInstance& inst, const MatchingReduction& red,
                                                const std::vector<Rat>& y);

/// Chooses every 2MO edge whose port edge is unmatched. Throws
/// InvariantError if the result violates the degree rules.
TwoMOSolution decode_matching_to_2mo(const TwoMOInstance& inst, const MatchingReduction& red,
                                     const PerfectMatching& m);

/// The perfect matching that decodes to `sol`: a vertex's first chosen edge
/// uses its prime copy, the second its double-prime copy.
PerfectMatching indicator_matching(const TwoMOInstance& inst, const MatchingReduction& red,
                                   const TwoMOSolution& sol);

/// Sums the three copies of every instance edge and reduces multiplicity 3
/// to 1. Throws InvariantError if the result is not a valid G2M.
GraphicalTwoMatching twomo_to_g2m(const TwoMOInstance& split, const TwoMOSolution& sol);

/// Minimum-cost 2-matching of K_n through the all-mandatory reduction.
TwoMatching optimal_two_matching(const MetricInstance& inst);

struct BoydCarrResult {
  SubtourSolution subtour;
  Rat alpha;
  TwoMOInstance split;     // on the support of the subtour solution
  std::vector<Rat> point;  // map_subtour_to_2mo image
  Rat point_cost;
  PerfectMatching matching;
  TwoMOSolution solution;
  Rat solution_cost;
  GraphicalTwoMatching g2m;
  Rat g2m_cost;
  TwoMatching two_matching;
  Rat two_matching_cost;
  Rat ratio;  // g2m_cost / subtour objective
  bool g2m_within_bound = false;       // g2m_cost <= 10/9 subtour
  bool two_matching_within_g2m = false;  // two_matching_cost <= g2m_cost
};

/// Subtour LP, split of its support, min-cost perfect matching of the
/// reduction, decode, triple cleanup and shortcut. Exact cost identities
/// between stages are asserted; the two bounds are recorded.
BoydCarrResult g2m_from_subtour(const MetricInstance& inst, const Rat& alpha = make_rat(1, 9));

}  // namespace tspgap
