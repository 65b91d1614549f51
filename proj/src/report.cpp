#include "tspgap/report.hpp"

#include <sstream>

#include "tspgap/errors.hpp"

namespace tspgap {

Json rat_json(const Rat& value) { return Json{{"exact", to_string(value)}, {"decimal", to_decimal(value)}}; }

namespace {

Json edge_values(const MetricInstance& inst, const std::vector<Rat>& values) {
  Json out = Json::array();
  for (int k = 0; k < inst.num_edges(); ++k) {
    if (values[k] == 0) continue;
    auto [i, j] = inst.edge_endpoints(k);
    out.push_back(Json{{"i", i}, {"j", j}, {"value", to_string(values[k])}});
  }
  return out;
}

Json ratio_block(const Rat& cost, const Rat& reference, const Rat& bound) {
  const Rat ratio = reference == 0 ? Rat(1) : Rat(cost / reference);
  return Json{{"ratio", rat_json(ratio)}, {"bound", to_string(bound)}, {"pass", cost <= bound * reference}};
}

}  // namespace

Json to_json(const FractionalTwoMatching& x, const MetricInstance& inst) {
  return Json{{"objective", rat_json(x.objective)}, {"edges", edge_values(inst, x.values)}};
}

Json to_json(const F2MDecomposition& d) {
  Json integer = Json::array();
  for (const auto& c : d.integer_components) {
    integer.push_back(Json{{"vertices", c.vertices}, {"cost", to_string(c.cost)}});
  }
  Json fractional = Json::array();
  for (const auto& c : d.fractional_components) {
    Json cycles = Json::array();
    for (const auto& cyc : c.cycles) cycles.push_back(Json{{"vertices", cyc.vertices}, {"cost", to_string(cyc.cost)}});
    Json paths = Json::array();
    for (const auto& p : c.paths) {
      paths.push_back(Json{{"vertices", p.vertices}, {"cost", to_string(p.cost)}, {"cut", p.cut}});
    }
    fractional.push_back(Json{{"vertices", c.vertices},
                              {"path_cost", to_string(c.path_cost)},
                              {"cycle_cost", to_string(c.cycle_cost)},
                              {"cycles", cycles},
                              {"paths", paths}});
  }
  return Json{{"n", d.n},
              {"has_cut_edge", has_cut_edge(d)},
              {"integer_components", integer},
              {"fractional_components", fractional}};
}

Json to_json(const SubtourSolution& s, const MetricInstance& inst) {
  Json trace = Json::array();
  for (const Rat& v : s.objective_trace) trace.push_back(to_string(v));
  return Json{{"objective", rat_json(s.objective)},
              {"edges", edge_values(inst, s.values)},
              {"cut_pool", s.cut_pool},
              {"objective_trace", trace}};
}

Json to_json(const GraphicalTwoMatching& g) {
  Json edges = Json::array();
  for (int k = 0; k < static_cast<int>(g.multiplicity.size()); ++k) {
    if (g.multiplicity[k] == 0) continue;
    auto [i, j] = complete_edge_endpoints(g.n, k);
    edges.push_back(Json{{"i", i}, {"j", j}, {"multiplicity", g.multiplicity[k]}});
  }
  return Json{{"vertices", g.vertices}, {"edges", edges}};
}

Json to_json(const TwoMatching& t) { return Json{{"cycles", t.cycles}}; }

Json g2m_certificate(const G2MPipelineResult& r, const MetricInstance& inst, const Rat& bound) {
  Json runs = Json::array();
  for (const auto& run : r.runs) {
    runs.push_back(Json{{"component", run.component},
                        {"construction", to_string(run.gadget.construction)},
                        {"gadget_vertices", run.gadget.graph.num_vertices()},
                        {"gadget_edges", run.gadget.graph.num_edges()},
                        {"matching_cost", to_string(run.matching.total_cost)},
                        {"normalized_cost", to_string(run.normalized.total_cost)},
                        {"g2m_cost", to_string(run.g2m_cost)}});
  }
  Json out{{"f2m", to_json(r.f2m, inst)},
           {"decomposition", to_json(r.decomposition)},
           {"components", runs},
           {"g2m", to_json(r.g2m)},
           {"f2m_cost", rat_json(r.f2m_cost)},
           {"g2m_cost", rat_json(r.g2m_cost)}};
  out.update(ratio_block(r.g2m_cost, r.f2m_cost, bound));
  return out;
}

Json boydcarr_certificate(const BoydCarrResult& r, const MetricInstance& inst) {
  return Json{{"alpha", to_string(r.alpha)},
              {"subtour", to_json(r.subtour, inst)},
              {"split_vertices", r.split.num_vertices()},
              {"split_edges", r.split.num_edges()},
              {"point_cost", rat_json(r.point_cost)},
              {"matching_cost", rat_json(r.matching.total_cost)},
              {"solution_cost", rat_json(r.solution_cost)},
              {"g2m", to_json(r.g2m)},
              {"g2m_cost", rat_json(r.g2m_cost)},
              {"two_matching", to_json(r.two_matching)},
              {"two_matching_cost", rat_json(r.two_matching_cost)},
              {"ratio", rat_json(r.ratio)},
              {"bound", "10/9"},
              {"g2m_within_bound", r.g2m_within_bound},
              {"two_matching_within_g2m", r.two_matching_within_g2m}};
}

std::optional<Pipeline> parse_pipeline(const std::string& name) {
  for (Pipeline p : {Pipeline::kF2M, Pipeline::kSubtour, Pipeline::kG2M43, Pipeline::kG2M109, Pipeline::kBoydCarr,
                     Pipeline::kAll}) {
    if (name == to_string(p)) return p;
  }
  return std::nullopt;
}

const char* to_string(Pipeline p) {
  switch (p) {
    case Pipeline::kF2M: return "f2m";
    case Pipeline::kSubtour: return "subtour";
    case Pipeline::kG2M43: return "g2m43";
    case Pipeline::kG2M109: return "g2m109";
    case Pipeline::kBoydCarr: return "boydcarr";
    case Pipeline::kAll: return "all";
  }
  return "?";
}

bool RunReport::pass() const {
  for (const auto& row : rows) {
    if (row.status == "error" || !row.pass) return false;
  }
  return true;
}

Json RunReport::to_json() const {
  Json rows_json = Json::array();
  for (const auto& row : rows) {
    Json r{{"pipeline", row.pipeline}, {"status", row.status}};
    if (!row.detail.empty()) r["detail"] = row.detail;
    if (row.cost) r["cost"] = rat_json(*row.cost);
    if (row.reference) r["reference"] = rat_json(*row.reference);
    if (row.ratio) r["ratio"] = rat_json(*row.ratio);
    if (row.bound) r["bound"] = to_string(*row.bound);
    if (row.status == "ok") r["pass"] = row.pass;
    if (!row.certificate.is_null()) r["certificate"] = row.certificate;
    rows_json.push_back(std::move(r));
  }
  Json out{{"schema", "tspgap.run_report"},
           {"schema_version", kReportSchemaVersion},
           {"instance", Json{{"n", n}, {"digest", digest}}},
           {"alpha", to_string(alpha)},
           {"pipelines", rows_json}};
  out["pass"] = pass();
  return out;
}

std::string RunReport::to_csv() const {
  std::ostringstream out;
  out << "digest,n,pipeline,status,cost,reference,ratio,ratio_decimal,bound,pass\n";
  for (const auto& row : rows) {
    out << digest << ',' << n << ',' << row.pipeline << ',' << row.status << ','
        << (row.cost ? to_string(*row.cost) : "") << ',' << (row.reference ? to_string(*row.reference) : "") << ','
        << (row.ratio ? to_string(*row.ratio) : "") << ',' << (row.ratio ? to_decimal(*row.ratio) : "") << ','
        << (row.bound ? to_string(*row.bound) : "") << ',' << (row.status == "ok" ? (row.pass ? "true" : "false") : "")
        << '\n';
  }
  return out.str();
}

namespace {

void fill_ratio(PipelineRow& row, const Rat& cost, const Rat& reference, const Rat& bound) {
  row.cost = cost;
  row.reference = reference;
  row.bound = bound;
  row.ratio = reference == 0 ? Rat(1) : Rat(cost / reference);
  row.pass = cost <= bound * reference;
}

template <typename Fn>
PipelineRow guarded(const char* name, Fn&& fn) {
  PipelineRow row;
  row.pipeline = name;
  try {
    fn(row);
  } catch (const InvariantError& e) {
    row.status = "error";
    row.detail = e.what();
    row.pass = false;
  }
  return row;
}

}  // namespace

RunReport run_report(const MetricInstance& inst, Pipeline which, const Rat& alpha) {
  if (!inst.metric()) throw PreconditionError("pipelines need a metric instance");
  RunReport report;
  report.n = inst.size();
  report.digest = instance_digest(inst);
  report.alpha = alpha;
  auto wants = [&](Pipeline p) { return which == Pipeline::kAll || which == p; };

  std::optional<FractionalTwoMatching> f2m;
  auto need_f2m = [&]() -> const FractionalTwoMatching& {
    if (!f2m) f2m = solve_f2m(inst);
    return *f2m;
  };

  if (wants(Pipeline::kF2M)) {
    report.rows.push_back(guarded("f2m", [&](PipelineRow& row) {
      const auto& x = need_f2m();
      row.cost = x.objective;
      auto d = decompose(inst, x);
      row.certificate = Json{{"f2m", to_json(x, inst)}, {"decomposition", to_json(d)}};
    }));
  }
  std::optional<Rat> subtour_value;
  if (wants(Pipeline::kSubtour)) {
    report.rows.push_back(guarded("subtour", [&](PipelineRow& row) {
      auto s = solve_subtour_lp(inst);
      row.cost = s.objective;
      row.reference = need_f2m().objective;
      row.pass = s.objective >= *row.reference;
      subtour_value = s.objective;
      row.certificate = to_json(s, inst);
    }));
  }
  if (wants(Pipeline::kG2M43)) {
    report.rows.push_back(guarded("g2m43", [&](PipelineRow& row) {
      auto r = g2m_from_f2m_43(inst, need_f2m());
      fill_ratio(row, r.g2m_cost, r.f2m_cost, make_rat(4, 3));
      row.certificate = g2m_certificate(r, inst, make_rat(4, 3));
    }));
  }
  if (wants(Pipeline::kG2M109)) {
    report.rows.push_back(guarded("g2m109", [&](PipelineRow& row) {
      auto r = g2m_from_f2m_109(inst, need_f2m());
      if (!r) {
        row.status = "not applicable";
        row.detail = "the F2M has a cut edge";
        return;
      }
      fill_ratio(row, r->g2m_cost, r->f2m_cost, make_rat(10, 9));
      row.certificate = g2m_certificate(*r, inst, make_rat(10, 9));
    }));
  }
  if (wants(Pipeline::kBoydCarr)) {
    std::optional<BoydCarrResult> bc;
    report.rows.push_back(guarded("boydcarr", [&](PipelineRow& row) {
      bc = g2m_from_subtour(inst, alpha);
      fill_ratio(row, bc->g2m_cost, bc->subtour.objective, make_rat(10, 9));
      row.pass = bc->g2m_within_bound && bc->two_matching_within_g2m;
      row.certificate = boydcarr_certificate(*bc, inst);
    }));
    if (bc) {
      subtour_value = bc->subtour.objective;
      PipelineRow row;
      row.pipeline = "boydcarr_2m";
      fill_ratio(row, bc->two_matching_cost, bc->subtour.objective, make_rat(10, 9));
      row.certificate = to_json(bc->two_matching);
      report.rows.push_back(std::move(row));
    }
  }
  if (which == Pipeline::kAll && inst.size() <= 10) {
    report.rows.push_back(guarded("optimal_2m", [&](PipelineRow& row) {
      auto t = optimal_two_matching(inst);
      row.cost = cost(t, inst);
      if (subtour_value) fill_ratio(row, *row.cost, *subtour_value, make_rat(10, 9));
      row.certificate = to_json(t);
    }));
  }
  return report;
}

}  // namespace tspgap
