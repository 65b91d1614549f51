#include "tspgap/twomo.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "tspgap/errors.hpp"

namespace tspgap {

int TwoMOInstance::num_mandatory() const {
  return static_cast<int>(std::count(optional.begin(), optional.end(), false));
}

TwoMOInstance split_graph(const MetricInstance& inst, const std::vector<int>& instance_edges) {
  const int n = inst.size();
  TwoMOInstance out;
  out.graph = MultiGraph(2 * n);
  out.optional.assign(2 * n, false);
  std::fill(out.optional.begin() + n, out.optional.end(), true);
  out.original_size = n;
  out.original_vertex.resize(2 * n);
  for (int v = 0; v < n; ++v) out.original_vertex[v] = out.original_vertex[n + v] = v;
  for (std::size_t t = 0; t < instance_edges.size(); ++t) {
    const int k = instance_edges[t];
    if (t > 0 && k <= instance_edges[t - 1]) throw PreconditionError("split edges must be sorted and distinct");
    auto [i, j] = inst.edge_endpoints(k);
    const Rat& c = inst.edge_cost(k);
    out.graph.add_edge(i, j, c);
    out.graph.add_edge(i, n + j, c);
    out.graph.add_edge(n + i, j, c);
    out.instance_edge.insert(out.instance_edge.end(), {k, k, k});
  }
  return out;
}

TwoMOInstance split_graph(const MetricInstance& inst) {
  std::vector<int> all(inst.num_edges());
  std::iota(all.begin(), all.end(), 0);
  return split_graph(inst, all);
}

TwoMOInstance all_mandatory(const MetricInstance& inst) {
  TwoMOInstance out;
  out.graph = MultiGraph(inst.size());
  out.optional.assign(inst.size(), false);
  out.original_size = inst.size();
  out.original_vertex.resize(inst.size());
  std::iota(out.original_vertex.begin(), out.original_vertex.end(), 0);
  for (int k = 0; k < inst.num_edges(); ++k) {
    auto [i, j] = inst.edge_endpoints(k);
    out.graph.add_edge(i, j, inst.edge_cost(k));
    out.instance_edge.push_back(k);
  }
  return out;
}

std::vector<Rat> map_subtour_to_2mo(const TwoMOInstance& split, const std::vector<Rat>& x, const Rat& alpha) {
  if (split.num_edges() % 3 != 0 || split.instance_edge.size() != static_cast<std::size_t>(split.num_edges())) {
    throw PreconditionError("mapping needs a split instance");
  }
  std::vector<Rat> y(split.num_edges());
  for (EdgeId t = 0; 3 * t < split.num_edges(); ++t) {
    const Rat& value = x.at(split.instance_edge[3 * t]);
    y[3 * t] = (1 - alpha) * value;
    y[3 * t + 1] = alpha * value;
    y[3 * t + 2] = alpha * value;
  }
  return y;
}

Rat point_cost(const TwoMOInstance& inst, const std::vector<Rat>& y) {
  Rat total = 0;
  for (const auto& e : inst.graph.edges()) total += y.at(e.id) * e.cost;
  return total;
}

std::string TwoMOViolation::describe() const {
  auto list = [](const std::vector<int>& xs) {
    std::string s = "{";
    for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? "," : "") + std::to_string(xs[k]);
    return s + "}";
  };
  switch (kind) {
    case Kind::kBound:
      return "edge " + std::to_string(edge) + " has value " + to_string(lhs) + " outside [0,1]";
    case Kind::kMandatoryDegree:
      return "mandatory vertex " + std::to_string(vertex) + " has degree " + to_string(lhs);
    case Kind::kOptionalDegree:
      return "optional vertex " + std::to_string(vertex) + " has degree " + to_string(lhs);
    case Kind::kOddMatching:
      return "S = " + list(set) + ", F = " + list(matching) + " gives " + to_string(lhs) + " < 1";
  }
  return {};
}

namespace {

// Searches the odd matchings inside one cut for a constraint value below
// `one`. Num is int64 after scaling or Rat.
template <typename Num>
struct OddMatchingSearch {
  const MultiGraph& g;
  const std::vector<EdgeId>& cut;
  const std::vector<Num>& weight;  // per graph edge: one - 2y(e)
  Num threshold;                   // the search wants sum(weight over F) < threshold
  bool prune;
  std::vector<Num> suffix_negative;
  std::vector<bool> used;
  std::vector<EdgeId> chosen;
  std::vector<EdgeId> found;
  Num found_sum{};
  long long leaves = 0;

  OddMatchingSearch(const MultiGraph& graph, const std::vector<EdgeId>& cut_edges, const std::vector<Num>& w,
                    Num t, bool prune_branches)
      : g(graph), cut(cut_edges), weight(w), threshold(t), prune(prune_branches), used(graph.num_vertices(), false) {
    suffix_negative.assign(cut.size() + 1, Num(0));
    for (std::size_t k = cut.size(); k-- > 0;) {
      const Num& wk = weight[cut[k]];
      suffix_negative[k] = suffix_negative[k + 1] + (wk < 0 ? wk : Num(0));
    }
  }

  bool run(std::size_t k, const Num& sum) {
    if (prune && !(sum + suffix_negative[k] < threshold)) return false;
    if (k == cut.size()) {
      if (chosen.size() % 2 == 0) return false;
      ++leaves;
      if (!(sum < threshold)) return false;
      found = chosen;
      found_sum = sum;
      return true;
    }
    if (run(k + 1, sum)) return true;
    const Edge& e = g.edge(cut[k]);
    if (used[e.a] || used[e.b]) return false;
    used[e.a] = used[e.b] = true;
    chosen.push_back(e.id);
    const bool hit = run(k + 1, sum + weight[e.id]);
    chosen.pop_back();
    used[e.a] = used[e.b] = false;
    return hit;
  }
};

template <typename Num>
std::optional<TwoMOViolation> odd_matching_scan(const TwoMOInstance& inst, const std::vector<Num>& y, const Num& one,
                                                TwoMOCheckStats* stats, const Rat& unit, bool prune) {
  const MultiGraph& g = inst.graph;
  const int n = g.num_vertices();
  std::vector<Num> weight(g.num_edges());
  for (const auto& e : g.edges()) weight[e.id] = one - y[e.id] - y[e.id];
  std::vector<EdgeId> cut;
  for (std::uint32_t mask = 1; mask < (1u << (n - 1)); ++mask) {
    if (stats) ++stats->sets;
    cut.clear();
    Num base(0);
    for (const auto& e : g.edges()) {
      if (((mask >> e.a) & 1u) != ((mask >> e.b) & 1u)) {
        cut.push_back(e.id);
        base += y[e.id];
      }
    }
    if (cut.empty()) continue;
    OddMatchingSearch<Num> search(g, cut, weight, one - base, prune);
    const bool hit = search.run(0, Num(0));
    if (stats) stats->matchings += search.leaves;
    if (hit) {
      TwoMOViolation v;
      v.kind = TwoMOViolation::Kind::kOddMatching;
      for (VertexId u = 0; u < n - 1; ++u) {
        if ((mask >> u) & 1u) v.set.push_back(u);
      }
      v.matching = search.found;
      std::sort(v.matching.begin(), v.matching.end());
      v.lhs = Rat(base + search.found_sum) / unit;
      return v;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<TwoMOViolation> check_2mo_polytope(const TwoMOInstance& inst, const std::vector<Rat>& y,
                                                 TwoMOCheckStats* stats, bool exhaustive) {
  const MultiGraph& g = inst.graph;
  const int n = g.num_vertices();
  if (n > 20) throw PreconditionError("2MO enumeration is limited to 20 vertices");
  if (static_cast<int>(y.size()) != g.num_edges()) throw PreconditionError("point has the wrong length");
  for (const auto& e : g.edges()) {
    if (y[e.id] < 0 || y[e.id] > 1) {
      TwoMOViolation v;
      v.kind = TwoMOViolation::Kind::kBound;
      v.edge = e.id;
      v.lhs = y[e.id];
      return v;
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    Rat d = 0;
    for (EdgeId id : g.incident(v)) d += y[id];
    const bool bad = inst.optional[v] ? d > 2 : d != 2;
    if (bad) {
      TwoMOViolation out;
      out.kind = inst.optional[v] ? TwoMOViolation::Kind::kOptionalDegree : TwoMOViolation::Kind::kMandatoryDegree;
      out.vertex = v;
      out.lhs = d;
      return out;
    }
  }
  if (n < 2) return std::nullopt;

  mpz_class scale = 1;
  for (const Rat& value : y) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), value.get_den_mpz_t());
  if (scale * (g.num_edges() + 1) * 4 < mpz_class(1) << 60) {
    std::vector<std::int64_t> scaled(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) {
      mpz_class v = y[k].get_num() * (scale / y[k].get_den());
      scaled[k] = v.get_si();
    }
    return odd_matching_scan<std::int64_t>(inst, scaled, scale.get_si(), stats, Rat(scale), !exhaustive);
  }
  return odd_matching_scan<Rat>(inst, y, Rat(1), stats, Rat(1), !exhaustive);
}

std::optional<std::string> validate_2mo_solution(const TwoMOInstance& inst, const TwoMOSolution& sol) {
  if (static_cast<int>(sol.chosen.size()) != inst.num_edges()) return "solution has the wrong length";
  std::vector<int> degree(inst.num_vertices(), 0);
  for (const auto& e : inst.graph.edges()) {
    const int c = sol.chosen[e.id];
    if (c != 0 && c != 1) return "edge " + std::to_string(e.id) + " chosen " + std::to_string(c) + " times";
    degree[e.a] += c;
    degree[e.b] += c;
  }
  for (VertexId v = 0; v < inst.num_vertices(); ++v) {
    if (inst.optional[v] ? (degree[v] != 0 && degree[v] != 2) : degree[v] != 2) {
      return std::string(inst.optional[v] ? "optional" : "mandatory") + " vertex " + std::to_string(v) +
             " has degree " + std::to_string(degree[v]);
    }
  }
  return std::nullopt;
}

Rat cost(const TwoMOInstance& inst, const TwoMOSolution& sol) {
  Rat total = 0;
  for (const auto& e : inst.graph.edges()) {
    if (sol.chosen.at(e.id)) total += e.cost;
  }
  return total;
}

MatchingReduction reduce_2mo_to_matching(const TwoMOInstance& inst) {
  MatchingReduction red;
  const int n = inst.num_vertices();
  red.num_2mo_vertices = n;
  red.graph = MultiGraph(2 * n + 2 * inst.num_edges());
  for (const auto& e : inst.graph.edges()) {
    const Rat half = e.cost / 2;
    const VertexId pa = red.port(e.id, 0);
    const VertexId pb = red.port(e.id, 1);
    red.graph.add_edge(red.prime(e.a), pa, half);
    red.graph.add_edge(red.double_prime(e.a), pa, half);
    red.graph.add_edge(pa, pb, Rat(0));
    red.graph.add_edge(red.prime(e.b), pb, half);
    red.graph.add_edge(red.double_prime(e.b), pb, half);
  }
  red.optional_link.assign(n, -1);
  for (VertexId v = 0; v < n; ++v) {
    if (inst.optional[v]) red.optional_link[v] = red.graph.add_edge(red.prime(v), red.double_prime(v), Rat(0));
  }
  return red;
}

std::vector<Rat> map_point_to_matching_polytope(const TwoMOInstance& inst, const MatchingReduction& red,
                                                const std::vector<Rat>& y) {
  std::vector<Rat> out(red.graph.num_edges(), Rat(0));
  std::vector<Rat> degree(inst.num_vertices(), Rat(0));
  for (const auto& e : inst.graph.edges()) {
    const Rat half = y.at(e.id) / 2;
    for (int side = 0; side < 2; ++side) {
      for (int copy = 0; copy < 2; ++copy) out[MatchingReduction::attach_edge(e.id, side, copy)] = half;
    }
    out[MatchingReduction::port_edge(e.id)] = 1 - y[e.id];
    degree[e.a] += y[e.id];
    degree[e.b] += y[e.id];
  }
  for (VertexId v = 0; v < inst.num_vertices(); ++v) {
    if (red.optional_link[v] >= 0) out[red.optional_link[v]] = 1 - degree[v] / 2;
  }
  return out;
}

TwoMOSolution decode_matching_to_2mo(const TwoMOInstance& inst, const MatchingReduction& red,
                                     const PerfectMatching& m) {
  std::vector<bool> in(red.graph.num_edges(), false);
  for (EdgeId id : m.edges) in.at(id) = true;
  TwoMOSolution sol;
  sol.chosen.resize(inst.num_edges());
  for (EdgeId e = 0; e < inst.num_edges(); ++e) sol.chosen[e] = in[MatchingReduction::port_edge(e)] ? 0 : 1;
  if (auto bad = validate_2mo_solution(inst, sol)) throw InvariantError("twomo", "decoded solution: " + *bad);
  return sol;
}

PerfectMatching indicator_matching(const TwoMOInstance& inst, const MatchingReduction& red,
                                   const TwoMOSolution& sol) {
  if (auto bad = validate_2mo_solution(inst, sol)) throw PreconditionError("indicator of invalid solution: " + *bad);
  std::vector<int> used(inst.num_vertices(), 0);
  PerfectMatching m{{}, Rat(0)};
  for (const auto& e : inst.graph.edges()) {
    if (!sol.chosen[e.id]) {
      m.edges.push_back(MatchingReduction::port_edge(e.id));
      continue;
    }
    m.edges.push_back(MatchingReduction::attach_edge(e.id, 0, used[e.a]++));
    m.edges.push_back(MatchingReduction::attach_edge(e.id, 1, used[e.b]++));
  }
  for (VertexId v = 0; v < inst.num_vertices(); ++v) {
    if (used[v] == 0 && red.optional_link[v] >= 0) m.edges.push_back(red.optional_link[v]);
  }
  std::sort(m.edges.begin(), m.edges.end());
  for (EdgeId id : m.edges) m.total_cost += red.graph.edge(id).cost;
  return m;
}

GraphicalTwoMatching twomo_to_g2m(const TwoMOInstance& split, const TwoMOSolution& sol) {
  if (split.original_size == 0) throw PreconditionError("G2M conversion needs a split instance");
  GraphicalTwoMatching g(split.original_size);
  g.vertices.resize(split.original_size);
  std::iota(g.vertices.begin(), g.vertices.end(), 0);
  for (const auto& e : split.graph.edges()) {
    if (sol.chosen.at(e.id)) ++g.multiplicity[split.instance_edge[e.id]];
  }
  for (int& m : g.multiplicity) {
    if (m == 3) m = 1;
  }
  if (auto bad = validate_g2m(g)) throw InvariantError("twomo", "G2M from 2MO: " + bad->message);
  return g;
}

TwoMatching optimal_two_matching(const MetricInstance& inst) {
  if (inst.size() < 3) throw PreconditionError("2-matching needs n >= 3");
  auto twomo = all_mandatory(inst);
  auto red = reduce_2mo_to_matching(twomo);
  auto sol = decode_matching_to_2mo(twomo, red, min_cost_perfect_matching(red.graph));

  const int n = inst.size();
  std::vector<std::vector<VertexId>> adj(n);
  for (const auto& e : twomo.graph.edges()) {
    if (sol.chosen[e.id]) {
      adj[e.a].push_back(e.b);
      adj[e.b].push_back(e.a);
    }
  }
  TwoMatching out;
  out.n = n;
  std::vector<bool> seen(n, false);
  for (VertexId start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<VertexId> cycle{start};
    seen[start] = true;
    VertexId prev = start;
    VertexId cur = std::min(adj[start][0], adj[start][1]);
    while (cur != start) {
      cycle.push_back(cur);
      seen[cur] = true;
      const VertexId next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
    }
    out.cycles.push_back(std::move(cycle));
  }
  std::vector<VertexId> all(n);
  std::iota(all.begin(), all.end(), 0);
  if (auto bad = validate_two_matching(out, all)) throw InvariantError("twomo", "optimal 2-matching: " + *bad);
  return out;
}

BoydCarrResult g2m_from_subtour(const MetricInstance& inst, const Rat& alpha) {
  BoydCarrResult r;
  r.alpha = alpha;
  r.subtour = solve_subtour_lp(inst);
  std::vector<int> support;
  for (int k = 0; k < inst.num_edges(); ++k) {
    if (r.subtour.values[k] != 0) support.push_back(k);
  }
  r.split = split_graph(inst, support);
  r.point = map_subtour_to_2mo(r.split, r.subtour.values, alpha);
  r.point_cost = point_cost(r.split, r.point);
  if (r.point_cost != (1 + alpha) * r.subtour.objective) {
    throw InvariantError("twomo", "mapped point costs " + to_string(r.point_cost) + ", expected " +
                                      to_string((1 + alpha) * r.subtour.objective));
  }

  auto red = reduce_2mo_to_matching(r.split);
  try {
    r.matching = min_cost_perfect_matching(red.graph);
  } catch (const NoPerfectMatchingError& e) {
    throw InvariantError("matching", e.what());
  }
  r.solution = decode_matching_to_2mo(r.split, red, r.matching);
  r.solution_cost = cost(r.split, r.solution);
  if (r.solution_cost != r.matching.total_cost) {
    throw InvariantError("twomo", "2MO cost " + to_string(r.solution_cost) + " differs from matching cost " +
                                      to_string(r.matching.total_cost));
  }

  r.g2m = twomo_to_g2m(r.split, r.solution);
  r.g2m_cost = cost(r.g2m, inst);
  if (r.g2m_cost > r.solution_cost) throw InvariantError("twomo", "triple cleanup increased the cost");
  r.two_matching = shortcut(r.g2m, inst);
  r.two_matching_cost = cost(r.two_matching, inst);

  r.ratio = r.subtour.objective == 0 ? Rat(1) : Rat(r.g2m_cost / r.subtour.objective);
  r.g2m_within_bound = r.g2m_cost <= make_rat(10, 9) * r.subtour.objective;
  r.two_matching_within_g2m = r.two_matching_cost <= r.g2m_cost;
  return r;
}

}  // namespace tspgap
