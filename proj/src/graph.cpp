#include "tspgap/graph.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <numeric>
#include <utility>

#include "tspgap/errors.hpp"

namespace tspgap {

MultiGraph::MultiGraph(int num_vertices) : incidence_(num_vertices) {}

VertexId MultiGraph::add_vertex() {
  incidence_.emplace_back();
  return num_vertices() - 1;
}

EdgeId MultiGraph::add_edge(VertexId a, VertexId b, Rat cost) {
  if (a < 0 || b < 0 || a >= num_vertices() || b >= num_vertices()) {
    throw ValidationError("edge endpoint out of range");
  }
  if (a == b) throw ValidationError("self-loop at vertex " + std::to_string(a));
  EdgeId id = num_edges();
  edges_.push_back(Edge{id, a, b, std::move(cost)});
  incidence_[a].push_back(id);
  incidence_[b].push_back(id);
  return id;
}

Rat MultiGraph::total_cost() const {
  Rat sum = 0;
  for (const auto& e : edges_) sum += e.cost;
  return sum;
}

std::vector<EdgeId> find_bridges(const MultiGraph& g) {
  const int n = g.num_vertices();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<EdgeId> bridges;
  int timer = 0;

  struct Frame {
    VertexId v;
    EdgeId via;
    std::size_t next;
  };
  for (VertexId root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto inc = g.incident(f.v);
      if (f.next < inc.size()) {
        EdgeId e = inc[f.next++];
        if (e == f.via) continue;
        VertexId w = g.edge(e).other(f.v);
        if (disc[w] < 0) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, e, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        VertexId parent = stack.back().v;
        low[parent] = std::min(low[parent], low[done.v]);
        if (low[done.v] > disc[parent]) bridges.push_back(done.via);
      }
    }
  }
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

std::vector<int> connected_components(const MultiGraph& g) {
  const int n = g.num_vertices();
  std::vector<int> label(n, -1);
  int next = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    std::vector<VertexId> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (EdgeId e : g.incident(v)) {
        VertexId w = g.edge(e).other(v);
        if (label[w] < 0) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

int count_components(const MultiGraph& g) {
  auto label = connected_components(g);
  return label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
}

std::optional<VertexId> first_non_cubic_vertex(const MultiGraph& g) {
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) != 3) return v;
  }
  return std::nullopt;
}

MultiGraph gen_random_cubic(int n, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) throw PreconditionError("cubic graphs need an even n >= 4");
  std::mt19937_64 rng(seed);
  for (;;) {
    std::vector<int> points;
    for (int v = 0; v < n; ++v) points.insert(points.end(), 3, v);
    std::shuffle(points.begin(), points.end(), rng);
    std::set<std::pair<int, int>> seen;
    bool simple = true;
    for (std::size_t k = 0; k < points.size() && simple; k += 2) {
      auto key = std::minmax(points[k], points[k + 1]);
      simple = key.first != key.second && seen.insert(key).second;
    }
    if (!simple) continue;
    MultiGraph g(n);
    for (const auto& [a, b] : seen) {
      const long num = static_cast<long>(rng() % 41) - 20;
      const long den = 1 + static_cast<long>(rng() % 6);
      g.add_edge(a, b, make_rat(num, den));
    }
    if (count_components(g) == 1 && find_bridges(g).empty()) return g;
  }
}

}  // namespace tspgap
