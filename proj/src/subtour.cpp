#include "tspgap/subtour.hpp"

#include <algorithm>
#include <cstdint>

#include "tspgap/errors.hpp"
#include "tspgap/lp.hpp"

namespace tspgap {

namespace {

LpConstraint cut_constraint(const MetricInstance& inst, const std::vector<VertexId>& side) {
  std::vector<bool> in(inst.size(), false);
  for (VertexId v : side) in[v] = true;
  LpConstraint row;
  for (int k = 0; k < inst.num_edges(); ++k) {
    auto [i, j] = inst.edge_endpoints(k);
    if (in[i] != in[j]) row.terms.push_back({k, 1});
  }
  row.relation = Relation::kGreaterEqual;
  row.rhs = 2;
  return row;
}

}  // namespace

MinCut separate_min_cut(int n, std::span<const WeightedPair> edges) {
  if (n < 2) throw PreconditionError("minimum cut needs at least two vertices");
  std::vector<std::vector<Rat>> w(n, std::vector<Rat>(n, Rat(0)));
  for (const auto& e : edges) {
    if (e.weight < 0) throw PreconditionError("negative cut weight");
    if (e.a == e.b) continue;
    w[e.a][e.b] += e.weight;
    w[e.b][e.a] += e.weight;
  }
  // members[v] lists the original vertices merged into v.
  std::vector<std::vector<VertexId>> members(n);
  for (int v = 0; v < n; ++v) members[v] = {v};
  std::vector<bool> merged(n, false);
  MinCut best{{}, Rat(-1)};

  for (int phase = 0; phase < n - 1; ++phase) {
    std::vector<Rat> attach(n, Rat(0));
    std::vector<bool> added(n, false);
    int prev = -1, last = -1;
    for (int step = 0; step < n - phase; ++step) {
      int pick = -1;
      for (int v = 0; v < n; ++v) {
        if (merged[v] || added[v]) continue;
        if (pick < 0 || attach[v] > attach[pick]) pick = v;
      }
      added[pick] = true;
      prev = last;
      last = pick;
      for (int v = 0; v < n; ++v) {
        if (!merged[v] && !added[v]) attach[v] += w[pick][v];
      }
    }
    if (best.value < 0 || attach[last] < best.value) {
      best.value = attach[last];
      best.side = members[last];
    }
    for (int v = 0; v < n; ++v) {
      w[prev][v] += w[last][v];
      w[v][prev] = w[prev][v];
    }
    w[prev][prev] = 0;
    members[prev].insert(members[prev].end(), members[last].begin(), members[last].end());
    merged[last] = true;
  }

  std::sort(best.side.begin(), best.side.end());
  if (best.side.front() == 0) {
    std::vector<VertexId> other;
    for (VertexId v = 0; v < n; ++v) {
      if (!std::binary_search(best.side.begin(), best.side.end(), v)) other.push_back(v);
    }
    best.side = std::move(other);
  }
  return best;
}

MinCut separate_min_cut(const MetricInstance& inst, const std::vector<Rat>& x) {
  std::vector<WeightedPair> support;
  for (int k = 0; k < inst.num_edges(); ++k) {
    if (x.at(k) != 0) {
      auto [i, j] = inst.edge_endpoints(k);
      support.push_back({i, j, x[k]});
    }
  }
  return separate_min_cut(inst.size(), support);
}

SubtourSolution solve_subtour_lp(const MetricInstance& inst) {
  if (inst.size() < 3) throw PreconditionError("subtour LP needs n >= 3");
  LinearProgram lp;
  for (int k = 0; k < inst.num_edges(); ++k) lp.add_variable(inst.edge_cost(k), 0, Rat(1));
  for (VertexId v = 0; v < inst.size(); ++v) {
    LpConstraint row;
    for (VertexId u = 0; u < inst.size(); ++u) {
      if (u != v) row.terms.push_back({inst.edge_index(u, v), 1});
    }
    row.rhs = 2;
    lp.add_constraint(std::move(row));
  }

  SubtourSolution out;
  auto sol = solve_lp(lp);
  while (true) {
    if (sol.status != LpStatus::kOptimal) {
      throw InvariantError("subtour", std::string("LP is ") + to_string(sol.status));
    }
    if (!out.objective_trace.empty() && sol.objective < out.objective_trace.back()) {
      throw InvariantError("subtour", "objective decreased after adding a cut");
    }
    out.objective_trace.push_back(sol.objective);
    auto cut = separate_min_cut(inst, sol.values);
    if (cut.value >= 2) break;
    const int size = static_cast<int>(cut.side.size());
    if (size < 3 || size > inst.size() - 3) {
      throw InvariantError("subtour", "violated cut with |S| = " + std::to_string(size));
    }
    out.cut_pool.push_back(cut.side);
    sol = add_constraint_and_resolve(lp, sol, cut_constraint(inst, cut.side));
  }
  out.values = std::move(sol.values);
  out.objective = sol.objective;
  return out;
}

std::string SubtourViolation::describe() const {
  switch (kind) {
    case Kind::kBound:
      return "edge " + std::to_string(edge) + " has value " + to_string(lhs) + " outside [0,1]";
    case Kind::kDegree:
      return "vertex " + std::to_string(vertex) + " has degree " + to_string(lhs);
    case Kind::kCut: {
      std::string s = "cut {";
      for (std::size_t k = 0; k < set.size(); ++k) s += (k ? "," : "") + std::to_string(set[k]);
      return s + "} carries " + to_string(lhs) + " < 2";
    }
  }
  return {};
}

std::optional<SubtourViolation> verify_subtour_feasible(const MetricInstance& inst, const std::vector<Rat>& x) {
  const int n = inst.size();
  if (n > 16) throw PreconditionError("subtour enumeration is limited to 16 vertices");
  if (static_cast<int>(x.size()) != inst.num_edges()) throw PreconditionError("value vector has the wrong length");
  for (int k = 0; k < inst.num_edges(); ++k) {
    if (x[k] < 0 || x[k] > 1) return SubtourViolation{SubtourViolation::Kind::kBound, k, -1, {}, x[k]};
  }
  for (VertexId v = 0; v < n; ++v) {
    Rat d = 0;
    for (VertexId u = 0; u < n; ++u) {
      if (u != v) d += x[inst.edge_index(u, v)];
    }
    if (d != 2) return SubtourViolation{SubtourViolation::Kind::kDegree, -1, v, {}, d};
  }
  for (std::uint32_t mask = 1; mask < (1u << (n - 1)); ++mask) {
    Rat value = 0;
    for (int k = 0; k < inst.num_edges(); ++k) {
      auto [i, j] = inst.edge_endpoints(k);
      if (((mask >> i) & 1u) != ((mask >> j) & 1u) && x[k] != 0) value += x[k];
    }
    if (value < 2) {
      SubtourViolation v{SubtourViolation::Kind::kCut, -1, -1, {}, value};
      for (VertexId u = 0; u < n - 1; ++u) {
        if ((mask >> u) & 1u) v.set.push_back(u);
      }
      return v;
    }
  }
  return std::nullopt;
}

}  // namespace tspgap
