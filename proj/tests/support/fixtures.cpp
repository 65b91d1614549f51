#include "fixtures.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <utility>

#include "tspgap/graph.hpp"

namespace fixture {

using tspgap::make_rat;
using tspgap::WeightedPair;

namespace {

struct Builder {
  int n = 0;
  std::vector<WeightedPair> edges;
  std::vector<std::pair<std::pair<int, int>, Rat>> values;

  int vertex() { return n++; }
  void edge(int a, int b, Rat weight, Rat value) {
    edges.push_back({a, b, weight});
    values.push_back({{a, b}, value});
  }
  StructuredF2M finish() {
    auto inst = tspgap::metric_closure(n, edges);
    std::vector<Rat> x(inst.num_edges(), Rat(0));
    for (const auto& [e, v] : values) x[inst.edge_index(e.first, e.second)] = v;
    return StructuredF2M{std::move(inst), std::move(x)};
  }
};

// Unit-valued path of `len` edges from `from` to `to` through new vertices.
void path(Builder& b, int from, int to, int len, const std::vector<Rat>& weights) {
  int prev = from;
  for (int k = 0; k < len; ++k) {
    const int next = k + 1 == len ? to : b.vertex();
    b.edge(prev, next, weights[k], 1);
    prev = next;
  }
}

}  // namespace

StructuredF2M cut_path_instance(int handle, int cut) {
  Builder b;
  const Rat half = make_rat(1, 2);
  int anchor[2];
  for (int leaf = 0; leaf < 2; ++leaf) {
    const int t0 = b.vertex();
    const int t1 = b.vertex();
    const int t2 = b.vertex();
    b.edge(t0, t1, 1, half);
    b.edge(t1, t2, 1, half);
    b.edge(t0, t2, 1, half);
    path(b, t0, t1, handle, std::vector<Rat>(handle, Rat(1)));
    anchor[leaf] = t2;
  }
  path(b, anchor[0], anchor[1], cut, std::vector<Rat>(cut, Rat(1)));
  return b.finish();
}

StructuredF2M random_structured_f2m(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto weight = [&]() { return Rat(1 + static_cast<long>(rng() % 5)); };
  const Rat half = make_rat(1, 2);
  for (;;) {
    Builder b;
    const int cycles = rng() % 3 == 0 ? 4 : 2;
    std::vector<int> cycle_of;
    std::vector<int> ends;
    std::vector<std::vector<int>> cyc;
    for (int c = 0; c < cycles; ++c) {
      const int len = rng() % 3 == 0 ? 5 : 3;
      std::vector<int> vs;
      for (int k = 0; k < len; ++k) vs.push_back(b.vertex());
      for (int k = 0; k < len; ++k) b.edge(vs[k], vs[(k + 1) % len], weight(), half);
      for (int v : vs) {
        ends.push_back(v);
        cycle_of.resize(b.n, -1);
        cycle_of[v] = c;
      }
      cyc.push_back(vs);
    }
    std::shuffle(ends.begin(), ends.end(), rng);
    // Pair consecutive endpoints; paths inside one cycle get length >= 2.
    tspgap::MultiGraph conn(cycles);
    for (std::size_t k = 0; k < ends.size(); k += 2) {
      const int a = ends[k];
      const int c = ends[k + 1];
      int len = 1 + static_cast<int>(rng() % 3);
      if (cycle_of[a] == cycle_of[c] && len < 2) len = 2;
      std::vector<Rat> ws;
      for (int i = 0; i < len; ++i) ws.push_back(weight());
      path(b, a, c, len, ws);
      if (cycle_of[a] != cycle_of[c]) conn.add_edge(cycle_of[a], cycle_of[c], 1);
    }
    if (tspgap::count_components(conn) != 1) continue;
    if (rng() % 2 == 0) {
      const int len = 3 + static_cast<int>(rng() % 3);
      std::vector<int> vs;
      for (int k = 0; k < len; ++k) vs.push_back(b.vertex());
      for (int k = 0; k < len; ++k) b.edge(vs[k], vs[(k + 1) % len], weight(), 1);
      // Tie the integral cycle into the metric with one long non-support link.
      b.edges.push_back({vs[0], 0, Rat(12)});
    }
    return b.finish();
  }
}

}  // namespace fixture
