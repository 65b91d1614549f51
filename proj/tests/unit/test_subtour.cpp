#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tspgap/errors.hpp"
#include "tspgap/f2m.hpp"
#include "tspgap/subtour.hpp"

using namespace tspgap;

namespace {

MetricInstance two_triangles_far_apart() {
  std::vector<WeightedPair> edges{{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}, {2, 3, 5}};
  return metric_closure(6, edges);
}

std::vector<Rat> indicator(const MetricInstance& inst, const std::vector<std::pair<int, int>>& edges) {
  std::vector<Rat> x(inst.num_edges(), Rat(0));
  for (auto [i, j] : edges) x[inst.edge_index(i, j)] = 1;
  return x;
}

}  // namespace

TEST(SeparateMinCut, DisjointTrianglesGiveZeroCut) {
  std::vector<WeightedPair> edges{{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}};
  auto cut = separate_min_cut(6, edges);
  EXPECT_EQ(cut.value, 0);
  EXPECT_EQ(cut.side, (std::vector<VertexId>{3, 4, 5}));
}

TEST(SeparateMinCut, HamiltonianCycleHasCutTwo) {
  std::vector<WeightedPair> edges;
  for (int v = 0; v < 7; ++v) edges.push_back({v, (v + 1) % 7, 1});
  EXPECT_EQ(separate_min_cut(7, edges).value, 2);
}

TEST(SeparateMinCut, MatchesSubsetScan) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 8;
    std::vector<WeightedPair> edges;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (rng() % 3 == 0) continue;
        edges.push_back({a, b, make_rat(static_cast<long>(rng() % 7), 1 + rng() % 4)});
        if (rng() % 5 == 0) edges.push_back({b, a, make_rat(1, 1 + rng() % 3)});
      }
    }
    auto cut = separate_min_cut(n, edges);
    ASSERT_EQ(cut.value, oracle::min_cut_by_subsets(n, edges)) << trial;
    // The returned side really carries that value.
    Rat carried = 0;
    for (const auto& e : edges) {
      const bool a = std::binary_search(cut.side.begin(), cut.side.end(), e.a);
      const bool b = std::binary_search(cut.side.begin(), cut.side.end(), e.b);
      if (a != b) carried += e.weight;
    }
    EXPECT_EQ(carried, cut.value);
    EXPECT_FALSE(cut.side.empty());
    EXPECT_NE(cut.side.front(), 0);
  }
}

TEST(SeparateMinCut, RejectsNegativeWeights) {
  std::vector<WeightedPair> edges{{0, 1, -1}};
  EXPECT_THROW(separate_min_cut(2, edges), PreconditionError);
}

TEST(SolveSubtour, Triangle) {
  auto s = solve_subtour_lp(MetricInstance(3, {1, 1, 1}));
  EXPECT_EQ(s.objective, 3);
  EXPECT_TRUE(s.cut_pool.empty());
}

TEST(SolveSubtour, WorstCaseFamilyEllOne) {
  auto fam = gen_worst_case_family(1);
  auto s = solve_subtour_lp(fam.instance);
  EXPECT_EQ(s.objective, 6);
  EXPECT_FALSE(verify_subtour_feasible(fam.instance, fam.certificate));
  EXPECT_EQ(fam.instance.weighted_cost(fam.certificate), 6);
}

TEST(SolveSubtour, SeparatedTrianglesNeedACut) {
  auto inst = two_triangles_far_apart();
  auto f2m = solve_f2m(inst);
  EXPECT_EQ(f2m.objective, 6);
  auto s = solve_subtour_lp(inst);
  ASSERT_FALSE(s.cut_pool.empty());
  EXPECT_GT(s.objective, 6);
  EXPECT_EQ(s.objective, oracle::subtour_lp_enumerated(inst));
  EXPECT_EQ(s.objective_trace.front(), 6);
  EXPECT_EQ(s.objective_trace.back(), s.objective);
}

TEST(SolveSubtour, MatchesFullEnumerationLp) {
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + trial % 5;
    auto inst = gen_random_metric(n, 500 + trial);
    auto s = solve_subtour_lp(inst);
    ASSERT_EQ(s.objective, oracle::subtour_lp_enumerated(inst)) << trial;
    EXPECT_EQ(inst.weighted_cost(s.values), s.objective);
    EXPECT_FALSE(verify_subtour_feasible(inst, s.values));
    EXPECT_GE(separate_min_cut(inst, s.values).value, 2);
    EXPECT_GE(s.objective, solve_f2m(inst).objective);
    for (std::size_t k = 1; k < s.objective_trace.size(); ++k) {
      EXPECT_GE(s.objective_trace[k], s.objective_trace[k - 1]);
    }
    for (const auto& side : s.cut_pool) {
      EXPECT_GE(static_cast<int>(side.size()), 3);
      EXPECT_LE(static_cast<int>(side.size()), n - 3);
    }
  }
}

TEST(SolveSubtour, ClusteredInstancesUseCuts) {
  // Three tight clusters on a line force subtour cuts.
  int with_cuts = 0;
  for (int trial = 0; trial < 10; ++trial) {
    std::mt19937_64 rng(trial);
    std::vector<WeightedPair> edges;
    const int n = 8;
    for (int v = 0; v < n; ++v) {
      const int w = (v + 1) % n;
      const bool same = v / 3 == w / 3;
      edges.push_back({v, w, same ? make_rat(1 + static_cast<long>(rng() % 3), 1) : Rat(20)});
    }
    for (int v = 0; v + 2 < n; v += 3) edges.push_back({v, v + 2, make_rat(1 + static_cast<long>(rng() % 3), 1)});
    auto inst = metric_closure(n, edges);
    auto s = solve_subtour_lp(inst);
    with_cuts += !s.cut_pool.empty();
    EXPECT_EQ(s.objective, oracle::subtour_lp_enumerated(inst));
  }
  EXPECT_GT(with_cuts, 0);
}

TEST(SolveSubtour, Deterministic) {
  auto inst = gen_random_metric(8, 77);
  auto a = solve_subtour_lp(inst);
  auto b = solve_subtour_lp(inst);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.cut_pool, b.cut_pool);
}

TEST(SmallCutsAreImplied, DegreeAndBoundsCoverSizesOneAndTwo) {
  // Any x with degree 2 and 0 <= x <= 1 carries at least 2 across sets of
  // one or two vertices; checked on F2M optima which satisfy only those.
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = gen_random_metric(5 + trial % 5, 900 + trial);
    auto x = solve_f2m(inst).values;
    const int n = inst.size();
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        Rat value = 0;
        for (int k = 0; k < inst.num_edges(); ++k) {
          auto [i, j] = inst.edge_endpoints(k);
          const bool ii = i == a || i == b;
          const bool jj = j == a || j == b;
          if (ii != jj) value += x[k];
        }
        EXPECT_GE(value, 2);
      }
    }
  }
}

TEST(VerifySubtourFeasible, DisjointTrianglesViolated) {
  auto inst = two_triangles_far_apart();
  auto x = indicator(inst, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  auto v = verify_subtour_feasible(inst, x);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, SubtourViolation::Kind::kCut);
  EXPECT_EQ(v->set, (std::vector<VertexId>{0, 1, 2}));
  EXPECT_EQ(v->lhs, 0);
  EXPECT_NE(v->describe().find("{0,1,2}"), std::string::npos);
}

TEST(VerifySubtourFeasible, BoundsAndDegree) {
  MetricInstance inst(4, {1, 1, 1, 1, 1, 1});
  std::vector<Rat> x(6, Rat(0));
  x[0] = 2;
  EXPECT_EQ(verify_subtour_feasible(inst, x)->kind, SubtourViolation::Kind::kBound);
  x[0] = 1;
  EXPECT_EQ(verify_subtour_feasible(inst, x)->kind, SubtourViolation::Kind::kDegree);
  auto tour = indicator(inst, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  EXPECT_FALSE(verify_subtour_feasible(inst, tour));
}
