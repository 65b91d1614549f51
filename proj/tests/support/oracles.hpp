#pragma once

#include <optional>
#include <vector>

#include "tspgap/graph.hpp"
#include "tspgap/instance.hpp"
#include "tspgap/lp.hpp"
#include "tspgap/rational.hpp"

namespace oracle {

using tspgap::Rat;

/// Solves A x = b exactly; nullopt when A is singular.
std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> a, std::vector<Rat> b);

/// Rank of a rational matrix.
int rank(std::vector<std::vector<Rat>> rows);

/// Minimum over every basic feasible solution, found by trying every choice
/// of n tight hyperplanes. Requires all variables to have finite bounds.
/// nullopt when the LP is infeasible.
std::optional<Rat> lp_by_vertex_enumeration(const tspgap::LinearProgram& lp);

/// Every perfect matching of g as a sorted edge-id list: the lowest uncovered
/// vertex is paired with each later neighbour in turn.
std::vector<std::vector<tspgap::EdgeId>> all_perfect_matchings(const tspgap::MultiGraph& g);

/// Smallest x(delta(S)) over odd S with 1 < |S| < n-1 by direct subset scan.
Rat min_odd_cut(const tspgap::MultiGraph& g, const std::vector<Rat>& x);

/// Whether x is a convex combination of the perfect matchings of g, decided
/// by an LP over the enumerated matchings.
bool in_perfect_matching_hull(const tspgap::MultiGraph& g, const std::vector<Rat>& x);

/// Smallest weight of a cut separating vertex 0 from some other vertex, by
/// scanning all 2^(n-1) subsets.
Rat min_cut_by_subsets(int n, const std::vector<tspgap::WeightedPair>& edges);

/// Subtour LP with every cut constraint 2 <= |S| <= n-2 written out at once.
Rat subtour_lp_enumerated(const tspgap::MetricInstance& inst);

/// Every 0/1 edge vector giving mandatory vertices degree 2 and optional
/// vertices degree 0 or 2, by depth-first search over edges.
std::vector<std::vector<int>> all_2mo_solutions(const tspgap::MultiGraph& g, const std::vector<bool>& optional);

/// Cheapest 2-factor of K_n by enumeration, or nullopt for n < 3.
std::optional<Rat> brute_force_two_matching(const tspgap::MetricInstance& inst);

tspgap::MultiGraph petersen(Rat cost);
tspgap::MultiGraph complete_graph(int n, Rat cost);

}  // namespace oracle
