#include "tspgap/f2m.hpp"

#include <algorithm>
#include <map>

#include "tspgap/errors.hpp"
#include "tspgap/graph.hpp"
#include "tspgap/lp.hpp"

namespace tspgap {

namespace {

const Rat kHalf = make_rat(1, 2);

void check_values(const MetricInstance& inst, const std::vector<Rat>& values) {
  if (static_cast<int>(values.size()) != inst.num_edges()) {
    throw ValidationError("expected " + std::to_string(inst.num_edges()) + " edge values, got " +
                          std::to_string(values.size()));
  }
  std::vector<Rat> degree(inst.size(), Rat(0));
  for (int k = 0; k < inst.num_edges(); ++k) {
    const Rat& v = values[k];
    auto [i, j] = inst.edge_endpoints(k);
    if (v != 0 && v != kHalf && v != 1) {
      throw ValidationError("edge (" + std::to_string(i) + "," + std::to_string(j) + ") has value " +
                            to_string(v) + " outside {0, 1/2, 1}");
    }
    degree[i] += v;
    degree[j] += v;
  }
  for (int v = 0; v < inst.size(); ++v) {
    if (degree[v] != 2) {
      throw ValidationError("vertex " + std::to_string(v) + " has degree " + to_string(degree[v]));
    }
  }
}

}  // namespace

FractionalTwoMatching solve_f2m(const MetricInstance& inst) {
  if (inst.size() < 3) throw PreconditionError("fractional 2-matching needs n >= 3");
  LinearProgram lp;
  for (int k = 0; k < inst.num_edges(); ++k) lp.add_variable(inst.edge_cost(k), 0, Rat(1));
  for (int v = 0; v < inst.size(); ++v) {
    LpConstraint row;
    for (int u = 0; u < inst.size(); ++u) {
      if (u != v) row.terms.push_back({inst.edge_index(u, v), 1});
    }
    row.relation = Relation::kEqual;
    row.rhs = 2;
    lp.add_constraint(std::move(row));
  }
  auto sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw InvariantError("f2m", std::string("degree LP is ") + to_string(sol.status));
  }
  for (int k = 0; k < inst.num_edges(); ++k) {
    const Rat& v = sol.values[k];
    if (v != 0 && v != kHalf && v != 1) {
      throw InvariantError("f2m", "basic solution has value " + to_string(v) + " on edge " + std::to_string(k));
    }
  }
  return FractionalTwoMatching{std::move(sol.values), sol.objective};
}

FractionalTwoMatching make_f2m(const MetricInstance& inst, std::vector<Rat> values) {
  check_values(inst, values);
  Rat objective = inst.weighted_cost(values);
  return FractionalTwoMatching{std::move(values), objective};
}

bool FractionalComponent::has_cut_path() const {
  return std::any_of(paths.begin(), paths.end(), [](const F2MPath& p) { return p.cut; });
}

int FractionalComponent::path_at(VertexId v) const {
  for (int k = 0; k < static_cast<int>(paths.size()); ++k) {
    if (paths[k].first() == v || paths[k].last() == v) return k;
  }
  throw PreconditionError("vertex " + std::to_string(v) + " is not a path endpoint");
}

F2MDecomposition decompose(const MetricInstance& inst, const FractionalTwoMatching& x) {
  check_values(inst, x.values);
  const int n = inst.size();
  std::vector<std::vector<int>> half(n);
  std::vector<std::vector<int>> unit(n);
  MultiGraph support(n);
  for (int k = 0; k < inst.num_edges(); ++k) {
    if (x.values[k] == 0) continue;
    auto [i, j] = inst.edge_endpoints(k);
    support.add_edge(i, j, inst.edge_cost(k));
    auto& bucket = x.values[k] == 1 ? unit : half;
    bucket[i].push_back(k);
    bucket[j].push_back(k);
  }
  auto other = [&](int k, VertexId v) {
    auto [i, j] = inst.edge_endpoints(k);
    return i == v ? j : i;
  };

  std::vector<bool> is_bridge_edge(inst.num_edges(), false);
  for (EdgeId b : find_bridges(support)) {
    const auto& e = support.edge(b);
    is_bridge_edge[inst.edge_index(e.a, e.b)] = true;
  }

  F2MDecomposition out;
  out.n = n;
  const auto label = connected_components(support);
  std::map<int, std::vector<VertexId>> members;
  for (int v = 0; v < n; ++v) members[label[v]].push_back(v);

  for (const auto& [lab, verts] : members) {
    const bool integral = std::all_of(verts.begin(), verts.end(), [&](VertexId v) { return half[v].empty(); });
    if (integral) {
      IntegerComponent ic;
      ic.cost = 0;
      VertexId prev = -1;
      VertexId cur = verts.front();
      do {
        ic.vertices.push_back(cur);
        int next_edge = unit[cur][0];
        if (other(next_edge, cur) == prev) next_edge = unit[cur][1];
        ic.edges.push_back(next_edge);
        ic.cost += inst.edge_cost(next_edge);
        prev = cur;
        cur = other(next_edge, cur);
      } while (cur != verts.front());
      if (ic.vertices.size() != verts.size()) {
        throw InvariantError("decompose", "unit component at vertex " + std::to_string(verts.front()) +
                                              " is not a single cycle");
      }
      out.integer_components.push_back(std::move(ic));
      continue;
    }

    FractionalComponent fc;
    fc.vertices = verts;
    fc.path_cost = 0;
    fc.cycle_cost = 0;
    for (VertexId v : verts) {
      const bool cycle_vertex = half[v].size() == 2 && unit[v].size() == 1;
      const bool interior = half[v].empty() && unit[v].size() == 2;
      if (!cycle_vertex && !interior) {
        throw InvariantError("decompose", "vertex " + std::to_string(v) + " has " +
                                              std::to_string(half[v].size()) + " half edges and " +
                                              std::to_string(unit[v].size()) + " unit edges");
      }
    }

    std::vector<bool> on_cycle(n, false);
    for (VertexId start : verts) {
      if (half[start].size() != 2 || on_cycle[start]) continue;
      HalfCycle hc;
      hc.cost = 0;
      VertexId prev = -1;
      VertexId cur = start;
      do {
        on_cycle[cur] = true;
        hc.vertices.push_back(cur);
        int e = half[cur][0];
        if (other(e, cur) == prev || (hc.vertices.size() == 1 && other(half[cur][1], cur) < other(e, cur))) {
          e = half[cur][1];
        }
        hc.edges.push_back(e);
        hc.edge_costs.push_back(inst.edge_cost(e));
        hc.cost += inst.edge_cost(e);
        prev = cur;
        cur = other(e, cur);
      } while (cur != start);
      if (hc.vertices.size() % 2 == 0) {
        throw InvariantError("decompose", "half cycle through vertex " + std::to_string(start) +
                                              " has even length " + std::to_string(hc.vertices.size()));
      }
      fc.cycle_cost += hc.cost;
      fc.cycles.push_back(std::move(hc));
    }

    for (VertexId start : verts) {
      if (half[start].size() != 2) continue;
      F2MPath path;
      path.cost = 0;
      path.vertices.push_back(start);
      VertexId prev = -1;
      VertexId cur = start;
      int e = unit[start][0];
      for (;;) {
        path.edges.push_back(e);
        path.edge_costs.push_back(inst.edge_cost(e));
        path.cost += inst.edge_cost(e);
        prev = cur;
        cur = other(e, cur);
        path.vertices.push_back(cur);
        if (half[cur].size() == 2) break;
        e = other(unit[cur][0], cur) == prev ? unit[cur][1] : unit[cur][0];
      }
      if (path.last() < start) continue;  // recorded from the other end
      path.cut = is_bridge_edge[path.edges.front()];
      fc.path_cost += path.cost;
      fc.paths.push_back(std::move(path));
    }
    out.fractional_components.push_back(std::move(fc));
  }
  return out;
}

bool has_cut_edge(const F2MDecomposition& d) {
  return std::any_of(d.fractional_components.begin(), d.fractional_components.end(),
                     [](const FractionalComponent& c) { return c.has_cut_path(); });
}

std::vector<Rat> to_values(const F2MDecomposition& d) {
  std::vector<Rat> values(static_cast<std::size_t>(d.n) * (d.n - 1) / 2, Rat(0));
  for (const auto& ic : d.integer_components) {
    for (int e : ic.edges) values[e] = 1;
  }
  for (const auto& fc : d.fractional_components) {
    for (const auto& c : fc.cycles) {
      for (int e : c.edges) values[e] = kHalf;
    }
    for (const auto& p : fc.paths) {
      for (int e : p.edges) values[e] = 1;
    }
  }
  return values;
}

}  // namespace tspgap
