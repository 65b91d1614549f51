#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tspgap/f2m.hpp"
#include "tspgap/g2m.hpp"
#include "tspgap/graph.hpp"
#include "tspgap/matching.hpp"

namespace tspgap {

/// One way to rebuild a path of length ell: edges at positions congruent to
/// `offset` mod 3 are removed and every other edge is doubled. The surviving
/// runs ("groups") have at most three vertices.
struct Pattern {
  int offset = 0;
  std::vector<int> multiplicity;  // per path position, 0 or 2
  int first_group_size = 0;
  int last_group_size = 0;
  bool needs_first_endpoint_cycle_edges = false;  // first group smaller than 3
  bool needs_last_endpoint_cycle_edges = false;
  Rat cost_in_g;    // cost of the doubled edges, both copies
  Rat signed_cost;  // cost_in_g minus the path cost
};

/// The patterns for offsets 0, 1, 2 of a path with the given edge costs.
std::array<Pattern, 3> make_patterns(const std::vector<Rat>& path_costs);

/// Offset of the pattern whose first (last) group has three vertices. For
/// ell = 1 no group has three vertices; these then name the two patterns
/// that double the single edge.
int first_middle_offset(int ell);
int last_middle_offset(int ell);

struct EdgeOrigin {
  enum class Kind { kCycleEdge, kPathEdge, kPatternEdge, kZeroEdge };
  Kind kind;
  int instance_edge = -1;  // kCycleEdge
  int path = -1;           // index into the component's paths
  int offset = -1;         // kPatternEdge
  int side = -1;           // kZeroEdge: 0 at the path's first endpoint, 1 at its last
  int position = -1;       // kZeroEdge: 0 joins chain slots 0-1, 1 joins slots 1-2
};

/// The six vertices and seven edges replacing one path and its endpoints.
struct PathGadget {
  int path = -1;
  std::array<std::array<VertexId, 3>, 2> chain{};     // [side][slot], slot 1 is the middle
  std::array<EdgeId, 3> pattern_edge{};                // by offset
  std::array<std::array<int, 2>, 3> pattern_slots{};   // by offset: {first-side slot, last-side slot}
  std::array<std::array<EdgeId, 2>, 2> zero_edge{};    // [side][position]
  std::array<Pattern, 3> patterns;
};

enum class Construction {
  kContracted,  // every path becomes one edge
  kCutPath,     // cut paths become gadgets costed by cost_in_g, others contracted
  kAllPaths,    // every path becomes a gadget costed by signed_cost
};

const char* to_string(Construction c);

struct GadgetGraph {
  Construction construction = Construction::kContracted;
  MultiGraph graph;
  std::vector<EdgeOrigin> origin;         // per edge of `graph`
  std::vector<VertexId> original_vertex;  // per vertex of `graph`
  std::vector<PathGadget> gadgets;
  std::vector<int> gadget_of_path;        // -1 when the path is contracted
  std::vector<EdgeId> edge_of_path;       // -1 when the path has a gadget
};

/// Throws PreconditionError when the component has a cut path.
GadgetGraph build_contracted(const FractionalComponent& comp);
GadgetGraph build_cutpath_gadgets(const FractionalComponent& comp);
/// Throws PreconditionError when the component has a cut path.
GadgetGraph build_all_path_gadgets(const FractionalComponent& comp);

/// Throws InvariantError unless the graph is cubic and 2-edge-connected.
void check_cubic_bridgeless(const GadgetGraph& gg);

/// Exact cost identities of a constructed graph: cycle edges negated, total
/// edge cost (P - C, P1 + 4 P2 - C or P - C), per-gadget pattern sums (4 P
/// and P) and pairwise nonnegative signed costs. Returns the first failure.
std::optional<std::string> check_gadget_accounting(const GadgetGraph& gg, const FractionalComponent& comp);

enum class PatternMode {
  kExactlyOne,  // every gadget keeps one pattern edge
  kZeroOrOne,   // every gadget keeps at most one
};

/// Swaps surplus pattern edges for zero-cost chain edges. The result is a
/// perfect matching of no greater cost.
PerfectMatching normalize_matching(const GadgetGraph& gg, const PerfectMatching& m, PatternMode mode);

/// Paths included once, doubled when their path edge is matched; cycle edges
/// included when unmatched; a matched pattern edge installs its pattern; a
/// gadget with no matched pattern edge includes its path once.
GraphicalTwoMatching decode_g2m(const GadgetGraph& gg, const PerfectMatching& m, const FractionalComponent& comp,
                                int n);

/// 1/9 on pattern edges and 4/9 elsewhere. Only for kAllPaths graphs.
std::vector<Rat> feasible_point_109(const GadgetGraph& gg);

std::string to_dot(const GadgetGraph& gg);

struct ComponentRun {
  int component = -1;
  GadgetGraph gadget;
  PerfectMatching matching;
  PerfectMatching normalized;
  GraphicalTwoMatching g2m;
  Rat g2m_cost;
};

struct G2MPipelineResult {
  FractionalTwoMatching f2m;
  F2MDecomposition decomposition;
  std::vector<ComponentRun> runs;
  GraphicalTwoMatching g2m;
  Rat g2m_cost;
  Rat f2m_cost;
  Rat ratio;  // g2m_cost / f2m_cost
};

/// Gadget graph per fractional component (cut paths as gadgets), min-cost
/// perfect matching, normalisation and decoding; integer components pass
/// through. Accounting identities are asserted along the way.
G2MPipelineResult g2m_from_f2m_43(const MetricInstance& inst, const FractionalTwoMatching& x);

/// As above with every path replaced by a gadget. Returns nullopt when the
/// decomposition has a cut edge.
std::optional<G2MPipelineResult> g2m_from_f2m_109(const MetricInstance& inst, const FractionalTwoMatching& x);

}  // namespace tspgap
