#include "tspgap/gadgets.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "tspgap/errors.hpp"

namespace tspgap {

std::array<Pattern, 3> make_patterns(const std::vector<Rat>& path_costs) {
  const int ell = static_cast<int>(path_costs.size());
  if (ell < 1) throw PreconditionError("patterns need a path with at least one edge");
  Rat path_cost = 0;
  for (const auto& c : path_costs) path_cost += c;

  std::array<Pattern, 3> out;
  for (int offset = 0; offset < 3; ++offset) {
    Pattern& p = out[offset];
    p.offset = offset;
    p.multiplicity.assign(ell, 2);
    p.cost_in_g = 0;
    int last_removed = -1;
    for (int k = 0; k < ell; ++k) {
      if (k % 3 == offset) {
        p.multiplicity[k] = 0;
        last_removed = k;
      } else {
        p.cost_in_g += 2 * path_costs[k];
      }
    }
    if (last_removed < 0) {
      p.first_group_size = p.last_group_size = ell + 1;
    } else {
      p.first_group_size = offset + 1;
      p.last_group_size = ell - last_removed;
    }
    p.needs_first_endpoint_cycle_edges = p.first_group_size < 3;
    p.needs_last_endpoint_cycle_edges = p.last_group_size < 3;
    p.signed_cost = p.cost_in_g - path_cost;
  }
  return out;
}

int first_middle_offset(int ell) { return ell == 1 ? 1 : 2; }
int last_middle_offset(int ell) { return ell == 1 ? 2 : ell % 3; }

const char* to_string(Construction c) {
  switch (c) {
    case Construction::kContracted: return "contracted";
    case Construction::kCutPath: return "cut-path";
    case Construction::kAllPaths: return "all-paths";
  }
  return "?";
}

namespace {

// Chain slots {first side, last side} for each pattern offset. The middle
// slot of each side carries the pattern whose group at that endpoint has
// three vertices; the remaining patterns take the chain ends in order.
std::array<std::array<int, 2>, 3> pattern_wiring(int ell) {
  std::array<std::array<int, 2>, 3> slots{};
  const int mu = first_middle_offset(ell);
  const int mv = last_middle_offset(ell);
  if (mu == mv) {
    slots[mu] = {1, 1};
    int end = 0;
    for (int o = 0; o < 3; ++o) {
      if (o == mu) continue;
      slots[o] = {end, end};
      end += 2;
    }
    return slots;
  }
  slots[mu] = {1, 0};
  slots[mv] = {0, 1};
  slots[3 - mu - mv] = {2, 2};
  return slots;
}

GadgetGraph build(const FractionalComponent& comp, Construction construction) {
  GadgetGraph gg;
  gg.construction = construction;
  const int npaths = static_cast<int>(comp.paths.size());
  if (npaths == 0) throw InvariantError("gadgets", "fractional component without paths");
  gg.gadget_of_path.assign(npaths, -1);
  gg.edge_of_path.assign(npaths, -1);

  auto gadgetised = [&](const F2MPath& p) {
    switch (construction) {
      case Construction::kContracted: return false;
      case Construction::kCutPath: return p.cut;
      case Construction::kAllPaths: return true;
    }
    return false;
  };

  // G' vertices: one per cycle vertex, or a 3-chain when its path has a gadget.
  std::map<VertexId, std::array<VertexId, 3>> slots_of;
  std::map<VertexId, VertexId> single_of;
  for (VertexId v : comp.vertices) {
    bool is_cycle_vertex = false;
    for (const auto& c : comp.cycles) {
      is_cycle_vertex |= std::find(c.vertices.begin(), c.vertices.end(), v) != c.vertices.end();
    }
    if (!is_cycle_vertex) continue;
    const auto& path = comp.paths[comp.path_at(v)];
    if (gadgetised(path)) {
      std::array<VertexId, 3> chain{};
      for (auto& s : chain) {
        s = gg.graph.add_vertex();
        gg.original_vertex.push_back(v);
      }
      slots_of[v] = chain;
    } else {
      single_of[v] = gg.graph.add_vertex();
      gg.original_vertex.push_back(v);
    }
  }

  auto add = [&](VertexId a, VertexId b, const Rat& cost, EdgeOrigin origin) {
    EdgeId id = gg.graph.add_edge(a, b, cost);
    gg.origin.push_back(origin);
    return id;
  };

  // Cycle edges, negated. At a chained vertex the edge towards the smaller
  // of its two cycle neighbours uses slot 0 and the other edge slot 2.
  for (const auto& c : comp.cycles) {
    const int len = static_cast<int>(c.vertices.size());
    auto at = [&](int k) { return c.vertices[((k % len) + len) % len]; };
    auto attach = [&](VertexId v, VertexId towards, VertexId other) {
      auto it = slots_of.find(v);
      if (it == slots_of.end()) return single_of.at(v);
      return it->second[towards < other ? 0 : 2];
    };
    for (int k = 0; k < len; ++k) {
      const VertexId a = at(k);
      const VertexId b = at(k + 1);
      EdgeOrigin o{EdgeOrigin::Kind::kCycleEdge};
      o.instance_edge = c.edges[k];
      add(attach(a, b, at(k - 1)), attach(b, a, at(k + 2)), -c.edge_costs[k], o);
    }
  }

  for (int pi = 0; pi < npaths; ++pi) {
    const auto& path = comp.paths[pi];
    if (!gadgetised(path)) {
      EdgeOrigin o{EdgeOrigin::Kind::kPathEdge};
      o.path = pi;
      gg.edge_of_path[pi] = add(single_of.at(path.first()), single_of.at(path.last()), path.cost, o);
      continue;
    }
    PathGadget gadget;
    gadget.path = pi;
    gadget.chain[0] = slots_of.at(path.first());
    gadget.chain[1] = slots_of.at(path.last());
    gadget.patterns = make_patterns(path.edge_costs);
    for (int side = 0; side < 2; ++side) {
      for (int pos = 0; pos < 2; ++pos) {
        EdgeOrigin o{EdgeOrigin::Kind::kZeroEdge};
        o.path = pi;
        o.side = side;
        o.position = pos;
        gadget.zero_edge[side][pos] = add(gadget.chain[side][pos], gadget.chain[side][pos + 1], Rat(0), o);
      }
    }
    gadget.pattern_slots = pattern_wiring(path.length());
    for (int offset = 0; offset < 3; ++offset) {
      const auto& pat = gadget.patterns[offset];
      EdgeOrigin o{EdgeOrigin::Kind::kPatternEdge};
      o.path = pi;
      o.offset = offset;
      const Rat& cost = construction == Construction::kAllPaths ? pat.signed_cost : pat.cost_in_g;
      gadget.pattern_edge[offset] = add(gadget.chain[0][gadget.pattern_slots[offset][0]],
                                        gadget.chain[1][gadget.pattern_slots[offset][1]], cost, o);
    }
    gg.gadget_of_path[pi] = static_cast<int>(gg.gadgets.size());
    gg.gadgets.push_back(std::move(gadget));
  }
  check_cubic_bridgeless(gg);
  return gg;
}

std::vector<bool> matched_mask(const GadgetGraph& gg, const PerfectMatching& m) {
  std::vector<bool> in(gg.graph.num_edges(), false);
  for (EdgeId id : m.edges) in.at(id) = true;
  return in;
}

}  // namespace

GadgetGraph build_contracted(const FractionalComponent& comp) {
  if (comp.has_cut_path()) throw PreconditionError("contracted construction needs a component without cut paths");
  return build(comp, Construction::kContracted);
}

GadgetGraph build_cutpath_gadgets(const FractionalComponent& comp) {
  return build(comp, comp.has_cut_path() ? Construction::kCutPath : Construction::kContracted);
}

GadgetGraph build_all_path_gadgets(const FractionalComponent& comp) {
  if (comp.has_cut_path()) throw PreconditionError("all-path construction needs a component without cut paths");
  return build(comp, Construction::kAllPaths);
}

void check_cubic_bridgeless(const GadgetGraph& gg) {
  if (auto v = first_non_cubic_vertex(gg.graph)) {
    throw InvariantError("gadgets", "vertex " + std::to_string(*v) + " of G' has degree " +
                                        std::to_string(gg.graph.degree(*v)));
  }
  const auto bridges = find_bridges(gg.graph);
  if (!bridges.empty()) throw InvariantError("gadgets", "edge " + std::to_string(bridges.front()) + " of G' is a bridge");
  if (static_cast<int>(gg.origin.size()) != gg.graph.num_edges()) {
    throw InvariantError("gadgets", "provenance does not cover every edge");
  }
}

std::optional<std::string> check_gadget_accounting(const GadgetGraph& gg, const FractionalComponent& comp) {
  std::map<int, Rat> cycle_cost;
  for (const auto& c : comp.cycles) {
    for (std::size_t k = 0; k < c.edges.size(); ++k) cycle_cost[c.edges[k]] = c.edge_costs[k];
  }
  Rat cut_paths = 0;
  for (const auto& p : comp.paths) {
    if (p.cut) cut_paths += p.cost;
  }
  for (const auto& e : gg.graph.edges()) {
    const auto& o = gg.origin[e.id];
    if (o.kind == EdgeOrigin::Kind::kCycleEdge && e.cost != -cycle_cost.at(o.instance_edge)) {
      return "cycle edge " + std::to_string(e.id) + " is not negated";
    }
    if (o.kind == EdgeOrigin::Kind::kZeroEdge && e.cost != 0) return "zero edge " + std::to_string(e.id) + " has cost";
  }
  const Rat& P = comp.path_cost;
  const Rat& C = comp.cycle_cost;
  Rat expected;
  switch (gg.construction) {
    case Construction::kContracted: expected = P - C; break;
    case Construction::kCutPath: expected = (P - cut_paths) + 4 * cut_paths - C; break;
    case Construction::kAllPaths: expected = P - C; break;
  }
  if (gg.graph.total_cost() != expected) {
    return std::string("total cost of the ") + to_string(gg.construction) + " graph is " +
           to_string(gg.graph.total_cost()) + ", expected " + to_string(expected);
  }
  for (const auto& g : gg.gadgets) {
    const Rat& path_cost = comp.paths[g.path].cost;
    Rat in_g = 0;
    Rat signed_sum = 0;
    for (const auto& p : g.patterns) {
      in_g += p.cost_in_g;
      signed_sum += p.signed_cost;
    }
    if (in_g != 4 * path_cost) return "patterns of path " + std::to_string(g.path) + " do not sum to 4P";
    if (signed_sum != path_cost) return "signed patterns of path " + std::to_string(g.path) + " do not sum to P";
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        if (g.patterns[a].signed_cost + g.patterns[b].signed_cost < 0) {
          return "negative pattern pair on path " + std::to_string(g.path);
        }
      }
    }
  }
  if (gg.construction == Construction::kAllPaths) {
    const auto x = feasible_point_109(gg);
    Rat value = 0;
    for (const auto& e : gg.graph.edges()) value += x[e.id] * e.cost;
    if (value != make_rat(1, 9) * P - make_rat(4, 9) * C) return "1/9-4/9 point cost differs from P/9 - 4C/9";
  }
  return std::nullopt;
}

PerfectMatching normalize_matching(const GadgetGraph& gg, const PerfectMatching& m, PatternMode mode) {
  auto in = matched_mask(gg, m);
  for (const auto& g : gg.gadgets) {
    std::vector<int> used;
    for (int o = 0; o < 3; ++o) {
      if (in[g.pattern_edge[o]]) used.push_back(o);
    }
    const int count = static_cast<int>(used.size());
    if (count == 1) continue;
    if (count == 0) {
      if (mode == PatternMode::kZeroOrOne) continue;
      throw InvariantError("normalize", "gadget of path " + std::to_string(g.path) + " uses no pattern edge");
    }

    // Drop two pattern edges covering both middle slots and cover the four
    // freed chain vertices with the two zero edges through the middles.
    auto drop = [&](int a, int b) {
      const bool covers_first = g.pattern_slots[a][0] == 1 || g.pattern_slots[b][0] == 1;
      const bool covers_last = g.pattern_slots[a][1] == 1 || g.pattern_slots[b][1] == 1;
      return covers_first && covers_last;
    };
    auto apply = [&](int a, int b) {
      in[g.pattern_edge[a]] = false;
      in[g.pattern_edge[b]] = false;
      for (int side = 0; side < 2; ++side) {
        const int end = g.pattern_slots[a][side] == 1 ? g.pattern_slots[b][side] : g.pattern_slots[a][side];
        in[g.zero_edge[side][end == 0 ? 0 : 1]] = true;
      }
    };
    if (count == 2) {
      if (mode == PatternMode::kExactlyOne || !drop(used[0], used[1])) {
        throw InvariantError("normalize", "gadget of path " + std::to_string(g.path) +
                                              " uses two pattern edges that cannot be exchanged");
      }
      apply(used[0], used[1]);
      continue;
    }
    int keep = -1;
    for (int o = 0; o < 3; ++o) {
      const int a = (o + 1) % 3;
      const int b = (o + 2) % 3;
      if (!drop(a, b)) continue;
      const auto& cost = gg.graph.edge(g.pattern_edge[o]).cost;
      if (keep < 0 || cost < gg.graph.edge(g.pattern_edge[keep]).cost) keep = o;
    }
    if (keep < 0) throw InvariantError("normalize", "no exchange for three pattern edges");
    apply((keep + 1) % 3, (keep + 2) % 3);
  }

  PerfectMatching out;
  out.total_cost = 0;
  for (EdgeId id = 0; id < gg.graph.num_edges(); ++id) {
    if (in[id]) {
      out.edges.push_back(id);
      out.total_cost += gg.graph.edge(id).cost;
    }
  }
  check_perfect_matching(gg.graph, out);
  if (out.total_cost > m.total_cost) throw InvariantError("normalize", "exchange increased the matching cost");
  return out;
}

GraphicalTwoMatching decode_g2m(const GadgetGraph& gg, const PerfectMatching& m, const FractionalComponent& comp,
                                int n) {
  const auto in = matched_mask(gg, m);
  GraphicalTwoMatching out(n);
  out.vertices = comp.vertices;
  auto add_path = [&](const F2MPath& p, int copies) {
    for (int e : p.edges) out.multiplicity[e] += copies;
  };
  for (const auto& e : gg.graph.edges()) {
    const auto& o = gg.origin[e.id];
    switch (o.kind) {
      case EdgeOrigin::Kind::kCycleEdge:
        if (!in[e.id]) out.multiplicity[o.instance_edge] += 1;
        break;
      case EdgeOrigin::Kind::kPathEdge:
        add_path(comp.paths[o.path], in[e.id] ? 2 : 1);
        break;
      case EdgeOrigin::Kind::kPatternEdge:
        if (in[e.id]) {
          const auto& path = comp.paths[o.path];
          const auto& pat = gg.gadgets[gg.gadget_of_path[o.path]].patterns[o.offset];
          for (int k = 0; k < path.length(); ++k) out.multiplicity[path.edges[k]] += pat.multiplicity[k];
        }
        break;
      case EdgeOrigin::Kind::kZeroEdge:
        break;
    }
  }
  for (const auto& g : gg.gadgets) {
    int used = 0;
    for (EdgeId id : g.pattern_edge) used += in[id];
    if (used == 0) add_path(comp.paths[g.path], 1);
    if (used > 1) throw PreconditionError("matching is not normalised");
  }
  if (auto bad = validate_g2m(out)) throw InvariantError("decode", bad->message);
  return out;
}

std::vector<Rat> feasible_point_109(const GadgetGraph& gg) {
  if (gg.construction != Construction::kAllPaths) {
    throw PreconditionError("the 1/9-4/9 point is defined on the all-path construction");
  }
  std::vector<Rat> x(gg.graph.num_edges());
  for (EdgeId id = 0; id < gg.graph.num_edges(); ++id) {
    x[id] = gg.origin[id].kind == EdgeOrigin::Kind::kPatternEdge ? make_rat(1, 9) : make_rat(4, 9);
  }
  return x;
}

std::string to_dot(const GadgetGraph& gg) {
  std::ostringstream os;
  os << "graph gadget {\n  // " << to_string(gg.construction) << "\n";
  for (VertexId v = 0; v < gg.graph.num_vertices(); ++v) {
    os << "  " << v << " [label=\"" << v << " (" << gg.original_vertex[v] << ")\"];\n";
  }
  for (const auto& e : gg.graph.edges()) {
    const auto& o = gg.origin[e.id];
    os << "  " << e.a << " -- " << e.b << " [label=\"";
    switch (o.kind) {
      case EdgeOrigin::Kind::kCycleEdge: os << "cycle e" << o.instance_edge; break;
      case EdgeOrigin::Kind::kPathEdge: os << "path " << o.path; break;
      case EdgeOrigin::Kind::kPatternEdge: os << "pattern " << o.path << "/" << o.offset; break;
      case EdgeOrigin::Kind::kZeroEdge: os << "zero " << o.path << "/" << o.side << o.position; break;
    }
    os << " : " << to_string(e.cost) << "\"";
    if (o.kind == EdgeOrigin::Kind::kZeroEdge) os << ", style=dashed";
    if (o.kind == EdgeOrigin::Kind::kPatternEdge) os << ", color=blue";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

namespace {

G2MPipelineResult run_pipeline(const MetricInstance& inst, const FractionalTwoMatching& x, bool all_paths) {
  G2MPipelineResult out;
  out.f2m = x;
  out.decomposition = decompose(inst, x);
  out.g2m = GraphicalTwoMatching(inst.size());
  for (const auto& ic : out.decomposition.integer_components) {
    GraphicalTwoMatching g(inst.size());
    g.vertices = ic.vertices;
    std::sort(g.vertices.begin(), g.vertices.end());
    for (int e : ic.edges) g.multiplicity[e] += 1;
    out.g2m.merge(g);
  }
  const auto& comps = out.decomposition.fractional_components;
  for (int ci = 0; ci < static_cast<int>(comps.size()); ++ci) {
    const auto& comp = comps[ci];
    ComponentRun run;
    run.component = ci;
    run.gadget = all_paths ? build_all_path_gadgets(comp) : build_cutpath_gadgets(comp);
    if (auto bad = check_gadget_accounting(run.gadget, comp)) throw InvariantError("accounting", *bad);
    run.matching = min_cost_perfect_matching(run.gadget.graph);
    run.normalized = normalize_matching(run.gadget, run.matching,
                                        all_paths ? PatternMode::kZeroOrOne : PatternMode::kExactlyOne);
    run.g2m = decode_g2m(run.gadget, run.normalized, comp, inst.size());
    run.g2m_cost = cost(run.g2m, inst);

    Rat cut_paths = 0;
    for (const auto& p : comp.paths) {
      if (p.cut && !all_paths) cut_paths += p.cost;
    }
    const Rat expected = comp.path_cost - cut_paths + comp.cycle_cost + run.normalized.total_cost;
    if (run.g2m_cost != expected) {
      throw InvariantError("accounting", "decoded G2M costs " + to_string(run.g2m_cost) + ", expected " +
                                             to_string(expected));
    }
    out.g2m.merge(run.g2m);
    out.runs.push_back(std::move(run));
  }
  if (auto bad = validate_g2m(out.g2m)) throw InvariantError("decode", bad->message);
  out.g2m_cost = cost(out.g2m, inst);
  out.f2m_cost = x.objective;
  out.ratio = out.g2m_cost / out.f2m_cost;
  return out;
}

}  // namespace

G2MPipelineResult g2m_from_f2m_43(const MetricInstance& inst, const FractionalTwoMatching& x) {
  return run_pipeline(inst, x, false);
}

std::optional<G2MPipelineResult> g2m_from_f2m_109(const MetricInstance& inst, const FractionalTwoMatching& x) {
  if (has_cut_edge(decompose(inst, x))) return std::nullopt;
  return run_pipeline(inst, x, true);
}

}  // namespace tspgap
