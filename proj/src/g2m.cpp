#include "tspgap/g2m.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tspgap/errors.hpp"

namespace tspgap {

int GraphicalTwoMatching::degree(VertexId v) const {
  int d = 0;
  for (VertexId u = 0; u < n; ++u) {
    if (u != v) d += at(u, v);
  }
  return d;
}

void GraphicalTwoMatching::merge(const GraphicalTwoMatching& other) {
  if (other.n != n) throw PreconditionError("merging G2Ms over different vertex counts");
  for (std::size_t k = 0; k < multiplicity.size(); ++k) multiplicity[k] += other.multiplicity[k];
  std::vector<VertexId> merged;
  std::set_union(vertices.begin(), vertices.end(), other.vertices.begin(), other.vertices.end(),
                 std::back_inserter(merged));
  vertices = std::move(merged);
}

namespace {

// Support components as sorted vertex lists, ordered by smallest member.
std::vector<std::vector<VertexId>> support_components(const GraphicalTwoMatching& g) {
  std::vector<int> parent(g.n);
  for (int v = 0; v < g.n; ++v) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<bool> touched(g.n, false);
  for (int k = 0; k < static_cast<int>(g.multiplicity.size()); ++k) {
    if (g.multiplicity[k] == 0) continue;
    auto [i, j] = complete_edge_endpoints(g.n, k);
    touched[i] = touched[j] = true;
    parent[find(i)] = find(j);
  }
  std::map<int, std::vector<VertexId>> groups;
  for (int v = 0; v < g.n; ++v) {
    if (touched[v]) groups[find(v)].push_back(v);
  }
  std::vector<std::vector<VertexId>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<G2MViolation> validate_g2m(const GraphicalTwoMatching& g) {
  using Kind = G2MViolation::Kind;
  for (int k = 0; k < static_cast<int>(g.multiplicity.size()); ++k) {
    const int m = g.multiplicity[k];
    if (m < 0 || m > 2) {
      auto [i, j] = complete_edge_endpoints(g.n, k);
      return G2MViolation{Kind::kMultiplicity, -1, k,
                          "edge (" + std::to_string(i) + "," + std::to_string(j) + ") has multiplicity " +
                              std::to_string(m)};
    }
  }
  std::vector<bool> member(g.n, false);
  for (VertexId v : g.vertices) member[v] = true;
  for (VertexId v = 0; v < g.n; ++v) {
    const int d = g.degree(v);
    if (member[v] && d != 2 && d != 4) {
      return G2MViolation{Kind::kDegree, v, -1, "vertex " + std::to_string(v) + " has degree " + std::to_string(d)};
    }
    if (!member[v] && d != 0) {
      return G2MViolation{Kind::kStrayVertex, v, -1,
                          "vertex " + std::to_string(v) + " is outside the vertex set but has degree " +
                              std::to_string(d)};
    }
  }
  for (const auto& comp : support_components(g)) {
    if (comp.size() < 3) {
      return G2MViolation{Kind::kSmallComponent, comp.front(), -1,
                          "component of vertex " + std::to_string(comp.front()) + " spans " +
                              std::to_string(comp.size()) + " vertices"};
    }
  }
  return std::nullopt;
}

std::vector<int> TwoMatching::edges() const {
  std::vector<int> out;
  for (const auto& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) out.push_back(complete_edge_index(n, c[k], c[(k + 1) % c.size()]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::string> validate_two_matching(const TwoMatching& t, const std::vector<VertexId>& vertices) {
  std::vector<int> seen(t.n, 0);
  for (const auto& c : t.cycles) {
    if (c.size() < 3) return "cycle of length " + std::to_string(c.size());
    for (VertexId v : c) {
      if (v < 0 || v >= t.n) return "vertex out of range";
      if (seen[v]++) return "vertex " + std::to_string(v) + " on two cycles";
    }
  }
  std::vector<bool> member(t.n, false);
  for (VertexId v : vertices) member[v] = true;
  for (VertexId v = 0; v < t.n; ++v) {
    if (member[v] != (seen[v] == 1)) return "vertex " + std::to_string(v) + " coverage mismatch";
  }
  return std::nullopt;
}

TwoMatching shortcut(const GraphicalTwoMatching& g, const MetricInstance& inst) {
  if (!inst.metric()) throw PreconditionError("shortcutting needs a metric instance");
  if (inst.size() != g.n) throw PreconditionError("G2M and instance sizes differ");
  if (auto bad = validate_g2m(g)) throw PreconditionError("invalid G2M: " + bad->message);

  // Adjacency with one entry per edge copy; copies share an edge index.
  std::vector<std::vector<std::pair<VertexId, int>>> adj(g.n);
  std::vector<int> remaining = g.multiplicity;
  for (int k = 0; k < static_cast<int>(g.multiplicity.size()); ++k) {
    auto [i, j] = complete_edge_endpoints(g.n, k);
    for (int c = 0; c < g.multiplicity[k]; ++c) {
      adj[i].push_back({j, k});
      adj[j].push_back({i, k});
    }
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  TwoMatching out;
  out.n = g.n;
  std::vector<std::size_t> next(g.n, 0);
  for (const auto& comp : support_components(g)) {
    // Iterative Hierholzer.
    std::vector<VertexId> stack{comp.front()};
    std::vector<VertexId> circuit;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      auto& i = next[v];
      while (i < adj[v].size() && remaining[adj[v][i].second] == 0) ++i;
      if (i == adj[v].size()) {
        circuit.push_back(v);
        stack.pop_back();
      } else {
        auto [u, k] = adj[v][i];
        --remaining[k];
        stack.push_back(u);
      }
    }
    std::reverse(circuit.begin(), circuit.end());
    std::vector<bool> used(g.n, false);
    std::vector<VertexId> cycle;
    for (VertexId v : circuit) {
      if (!used[v]) {
        used[v] = true;
        cycle.push_back(v);
      }
    }
    out.cycles.push_back(std::move(cycle));
  }
  if (auto bad = validate_two_matching(out, g.vertices)) throw InvariantError("shortcut", *bad);
  if (cost(out, inst) > cost(g, inst)) throw InvariantError("shortcut", "shortcutting increased the cost");
  return out;
}

Rat cost(const GraphicalTwoMatching& g, const MetricInstance& inst) {
  Rat total = 0;
  for (int k = 0; k < static_cast<int>(g.multiplicity.size()); ++k) {
    if (g.multiplicity[k] != 0) total += g.multiplicity[k] * inst.edge_cost(k);
  }
  return total;
}

Rat cost(const TwoMatching& t, const MetricInstance& inst) {
  Rat total = 0;
  for (int k : t.edges()) total += inst.edge_cost(k);
  return total;
}

GraphicalTwoMatching as_g2m(const TwoMatching& t) {
  GraphicalTwoMatching g(t.n);
  for (const auto& c : t.cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) g.at(c[k], c[(k + 1) % c.size()]) += 1;
    g.vertices.insert(g.vertices.end(), c.begin(), c.end());
  }
  std::sort(g.vertices.begin(), g.vertices.end());
  return g;
}

}  // namespace tspgap
