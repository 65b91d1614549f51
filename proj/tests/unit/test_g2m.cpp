#include <random>

#include <gtest/gtest.h>

#include "tspgap/errors.hpp"
#include "tspgap/g2m.hpp"

using namespace tspgap;

namespace {

GraphicalTwoMatching make(int n, std::vector<VertexId> vertices, std::vector<std::tuple<int, int, int>> edges) {
  GraphicalTwoMatching g(n);
  g.vertices = std::move(vertices);
  for (auto [a, b, m] : edges) g.at(a, b) += m;
  return g;
}

// Random valid G2M: vertex-disjoint blocks, each either a simple cycle, a
// doubled path on three vertices, or a cycle with one doubled pendant path.
GraphicalTwoMatching random_g2m(std::mt19937_64& rng, int n) {
  std::vector<VertexId> order(n);
  for (int v = 0; v < n; ++v) order[v] = v;
  std::shuffle(order.begin(), order.end(), rng);
  GraphicalTwoMatching g(n);
  std::size_t at = 0;
  while (n - static_cast<int>(at) >= 3) {
    const int left = n - static_cast<int>(at);
    const int kind = rng() % 3;
    if (kind == 0 || left < 5) {
      const int len = 3 + static_cast<int>(rng() % (left - 2));
      for (int k = 0; k < len; ++k) g.at(order[at + k], order[at + (k + 1) % len]) += 1;
      at += len;
    } else if (kind == 1) {
      g.at(order[at], order[at + 1]) += 2;
      g.at(order[at + 1], order[at + 2]) += 2;
      at += 3;
    } else {
      // Triangle plus doubled edge hanging off one corner.
      g.at(order[at], order[at + 1]) += 1;
      g.at(order[at + 1], order[at + 2]) += 1;
      g.at(order[at + 2], order[at]) += 1;
      g.at(order[at], order[at + 3]) += 2;
      at += 4;
    }
    if (n - static_cast<int>(at) < 3) break;
  }
  for (std::size_t k = 0; k < at; ++k) g.vertices.push_back(order[k]);
  std::sort(g.vertices.begin(), g.vertices.end());
  return g;
}

}  // namespace

TEST(ValidateG2m, Triangle) {
  EXPECT_FALSE(validate_g2m(make(3, {0, 1, 2}, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}})));
}

TEST(ValidateG2m, DoubledPathOfTwoEdges) {
  auto g = make(3, {0, 1, 2}, {{0, 1, 2}, {1, 2, 2}});
  EXPECT_FALSE(validate_g2m(g));
  EXPECT_EQ(g.degree(1), 4);
}

TEST(ValidateG2m, SingleDoubledEdgeIsTooSmall) {
  auto v = validate_g2m(make(2, {0, 1}, {{0, 1, 2}}));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, G2MViolation::Kind::kSmallComponent);
}

TEST(ValidateG2m, DegreeAndMultiplicity) {
  auto odd = validate_g2m(make(4, {0, 1, 2, 3}, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}}));
  ASSERT_TRUE(odd);
  EXPECT_EQ(odd->kind, G2MViolation::Kind::kDegree);
  auto triple = validate_g2m(make(3, {0, 1, 2}, {{0, 1, 3}}));
  ASSERT_TRUE(triple);
  EXPECT_EQ(triple->kind, G2MViolation::Kind::kMultiplicity);
}

TEST(Cost, Examples) {
  MetricInstance inst(3, {Rat(1), Rat(1), Rat(1)});
  EXPECT_EQ(cost(GraphicalTwoMatching(3), inst), 0);
  EXPECT_EQ(cost(make(3, {0, 1, 2}, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}), inst), 3);
  EXPECT_EQ(cost(make(3, {0, 1, 2}, {{0, 1, 2}, {1, 2, 2}}), inst), 4);
}

TEST(Shortcut, DoubledPathBecomesTriangle) {
  MetricInstance inst(3, {Rat(2), Rat(3), Rat(4)});
  auto t = shortcut(make(3, {0, 1, 2}, {{0, 1, 2}, {1, 2, 2}}), inst);
  ASSERT_EQ(t.cycles.size(), 1u);
  EXPECT_EQ(t.cycles[0], (std::vector<VertexId>{0, 1, 2}));
  EXPECT_EQ(cost(t, inst), 9);
  EXPECT_LE(cost(t, inst), 2 * 2 + 2 * 4);
}

TEST(Shortcut, CyclesAreUnchanged) {
  auto inst = gen_random_metric(7, 3);
  auto g = make(7, {0, 1, 2, 3, 4, 5, 6}, {{0, 2, 1}, {2, 4, 1}, {4, 0, 1}, {1, 3, 1}, {3, 6, 1}, {6, 5, 1}, {5, 1, 1}});
  auto t = shortcut(g, inst);
  EXPECT_EQ(as_g2m(t).multiplicity, g.multiplicity);
  EXPECT_EQ(cost(t, inst), cost(g, inst));
}

TEST(Shortcut, RejectsNonMetric) {
  MetricInstance inst(3, {Rat(1), Rat(1), Rat(3)});
  EXPECT_THROW(shortcut(make(3, {0, 1, 2}, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}), inst), PreconditionError);
}

TEST(Shortcut, RandomG2msNeverIncreaseCost) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 10);
    auto inst = gen_random_metric(n, trial);
    auto g = random_g2m(rng, n);
    if (g.vertices.empty()) continue;
    ASSERT_FALSE(validate_g2m(g)) << trial;
    auto t = shortcut(g, inst);
    EXPECT_FALSE(validate_two_matching(t, g.vertices)) << trial;
    EXPECT_LE(cost(t, inst), cost(g, inst)) << trial;
    for (const auto& c : t.cycles) EXPECT_GE(c.size(), 3u);
  }
}
