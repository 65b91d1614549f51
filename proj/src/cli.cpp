#include "tspgap/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "tspgap/errors.hpp"
#include "tspgap/report.hpp"

namespace tspgap {

namespace {

struct Options {
  std::string kind;
  int n = 7;
  int ell = 1;
  std::string non_edge = "closure";
  std::uint64_t seed = 1;
  int trials = 20;
  std::string instance;
  std::string pipeline = "all";
  std::string alpha = "1/9";
  std::string format;  // empty means the subcommand default
  std::string out;
  std::string suite;
  int ell_max = 5;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
}

MetricInstance load_instance(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_instance(buf.str());
}

NonEdgeCost parse_non_edge(const std::string& s) {
  if (s == "closure") return NonEdgeCost::kMetricClosure;
  if (s == "two") return NonEdgeCost::kTwo;
  throw UsageError("--non-edge must be closure or two");
}

int cmd_gen(const Options& o, std::ostream& out) {
  if (o.kind == "random") {
    if (o.n < 3) throw UsageError("--n must be at least 3");
    emit(o, instance_to_json(gen_random_metric(o.n, o.seed)) + "\n", out);
  } else {
    if (o.ell < 1) throw UsageError("--ell must be at least 1");
    emit(o, instance_to_json(gen_worst_case_family(o.ell, parse_non_edge(o.non_edge)).instance) + "\n", out);
  }
  return kExitPass;
}

int cmd_run(const Options& o, std::ostream& out) {
  auto pipeline = parse_pipeline(o.pipeline);
  if (!pipeline) throw UsageError("unknown pipeline " + o.pipeline);
  auto inst = load_instance(o.instance);
  if (!inst.metric()) throw UsageError("instance violates the triangle inequality");
  auto report = run_report(inst, *pipeline, parse_rat(o.alpha));
  emit(o, o.format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n", out);
  return report.pass() ? kExitPass : kExitFail;
}

struct SuiteResult {
  std::string name;
  int passed = 0;
  int total = 0;
  Json counterexamples = Json::array();

  void record(bool ok, Json witness) {
    ++total;
    if (ok) {
      ++passed;
    } else {
      counterexamples.push_back(std::move(witness));
    }
  }
};

MultiGraph random_multigraph(int n, std::mt19937_64& rng) {
  MultiGraph g(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const int copies = static_cast<int>(rng() % 4) - 1;
      for (int c = 0; c < copies; ++c) g.add_edge(a, b, make_rat(static_cast<long>(rng() % 21) - 10, 1 + rng() % 4));
    }
  }
  return g;
}

std::vector<SuiteResult> verify_oracles(const Options& o) {
  SuiteResult eq{"blossom=bruteforce"};
  for (int t = 0; t < o.trials; ++t) {
    const std::uint64_t seed = o.seed + t;
    std::mt19937_64 rng(seed);
    auto g = random_multigraph(o.n, rng);
    std::optional<Rat> fast, slow;
    try {
      fast = min_cost_perfect_matching(g).total_cost;
    } catch (const NoPerfectMatchingError&) {
    }
    try {
      slow = brute_force_perfect_matching(g).total_cost;
    } catch (const NoPerfectMatchingError&) {
    }
    eq.record(fast == slow, Json{{"seed", seed}, {"blossom", fast ? to_string(*fast) : "none"},
                                 {"bruteforce", slow ? to_string(*slow) : "none"}});
  }
  return {eq};
}

std::vector<SuiteResult> verify_polytopes(const Options& o) {
  SuiteResult lemma{"2mo_membership"};
  SuiteResult third{"third_point_membership"};
  SuiteResult point109{"ninth_point_membership"};
  for (int t = 0; t < o.trials; ++t) {
    const std::uint64_t seed = o.seed + t;
    auto inst = gen_random_metric(o.n, seed);
    auto s = split_graph(inst);
    auto v = check_2mo_polytope(s, map_subtour_to_2mo(s, solve_subtour_lp(inst).values, make_rat(1, 9)));
    lemma.record(!v, Json{{"seed", seed}, {"violation", v ? v->describe() : ""}});

    auto x = solve_f2m(inst);
    auto d = decompose(inst, x);
    if (!has_cut_edge(d)) {
      for (const auto& comp : d.fractional_components) {
        auto gg = build_all_path_gadgets(comp);
        if (gg.graph.num_vertices() > 24) continue;
        auto pv = check_matching_polytope_point(gg.graph, feasible_point_109(gg));
        point109.record(!pv, Json{{"seed", seed}, {"violation", pv ? pv->describe() : ""}});
      }
    }

    const int cubic_n = std::clamp(o.n % 2 == 0 ? o.n : o.n + 1, 4, 14);
    auto g = gen_random_cubic(cubic_n, seed);
    auto np = np_bound_check(g);
    std::vector<Rat> point(g.num_edges(), make_rat(1, 3));
    auto pv = check_matching_polytope_point(g, point);
    third.record(np.bound_holds && !pv, Json{{"seed", seed}, {"matching", to_string(np.matching.total_cost)},
                                             {"bound", to_string(np.bound)}});
  }
  for (int ell = 1; ell <= 3; ++ell) {
    auto fam = gen_worst_case_family(ell);
    auto d = decompose(fam.instance, make_f2m(fam.instance, fam.certificate));
    auto gg = build_all_path_gadgets(d.fractional_components.at(0));
    auto pv = check_matching_polytope_point(gg.graph, feasible_point_109(gg));
    point109.record(!pv, Json{{"family_ell", ell}, {"violation", pv ? pv->describe() : ""}});
  }
  return {lemma, point109, third};
}

std::vector<SuiteResult> verify_ratios(const Options& o) {
  SuiteResult rows{"pipeline_bounds"};
  for (int t = 0; t < o.trials; ++t) {
    const std::uint64_t seed = o.seed + t;
    auto report = run_report(gen_random_metric(o.n, seed), Pipeline::kAll, parse_rat(o.alpha));
    Json failed = Json::array();
    for (const auto& row : report.rows) {
      if (row.status == "error" || !row.pass) failed.push_back(row.pipeline + ": " + row.status + " " + row.detail);
    }
    rows.record(report.pass(), Json{{"seed", seed}, {"failed", failed}});
  }
  return {rows};
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.trials < 1) throw UsageError("--trials must be positive");
  std::vector<SuiteResult> results;
  if (o.suite == "oracles") {
    if (o.n < 1 || o.n > 16) throw UsageError("oracles suite needs 1 <= --n <= 16");
    results = verify_oracles(o);
  } else if (o.suite == "polytopes") {
    if (o.n < 3 || o.n > 10) throw UsageError("polytopes suite needs 3 <= --n <= 10");
    results = verify_polytopes(o);
  } else {
    if (o.n < 3) throw UsageError("ratios suite needs --n >= 3");
    results = verify_ratios(o);
  }
  bool ok = true;
  Json summary{{"schema", "tspgap.verify_summary"}, {"schema_version", kReportSchemaVersion}, {"suite", o.suite},
               {"n", o.n}, {"trials", o.trials}, {"seed", o.seed}};
  Json checks = Json::array();
  std::ostringstream text;
  for (const auto& r : results) {
    ok = ok && r.passed == r.total;
    checks.push_back(Json{{"check", r.name}, {"passed", r.passed}, {"total", r.total},
                          {"counterexamples", r.counterexamples}});
    text << r.name << ' ' << r.passed << '/' << r.total << '\n';
    for (const auto& c : r.counterexamples) text << "  counterexample " << c.dump() << '\n';
  }
  summary["checks"] = checks;
  summary["pass"] = ok;
  text << (ok ? "PASS" : "FAIL") << '\n';
  emit(o, o.format == "json" ? summary.dump(2) + "\n" : text.str(), out);
  return ok ? kExitPass : kExitFail;
}

int cmd_family(const Options& o, std::ostream& out) {
  if (o.ell_max < 1) throw UsageError("--ell-max must be at least 1");
  const NonEdgeCost non_edges = parse_non_edge(o.non_edge);
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "ell,n,f2m,subtour,optimal_2m,ratio,ratio_decimal,g2m109,g2m109_ratio,boydcarr_g2m,boydcarr_ratio\n";
  bool ok = true;
  for (int ell = 1; ell <= o.ell_max; ++ell) {
    auto fam = gen_worst_case_family(ell, non_edges);
    const auto& inst = fam.instance;
    auto x = solve_f2m(inst);
    auto s = solve_subtour_lp(inst);
    const Rat opt = cost(optimal_two_matching(inst), inst);
    const Rat ratio = opt / s.objective;
    auto r109 = g2m_from_f2m_109(inst, x);
    auto bc = g2m_from_subtour(inst, parse_rat(o.alpha));
    ok = ok && ratio <= make_rat(10, 9) && bc.g2m_within_bound && (!r109 || r109->ratio <= make_rat(10, 9));
    rows.push_back(Json{{"ell", ell},
                        {"n", inst.size()},
                        {"f2m", to_string(x.objective)},
                        {"subtour", to_string(s.objective)},
                        {"optimal_2m", to_string(opt)},
                        {"ratio", rat_json(ratio)},
                        {"g2m109", r109 ? Json(to_string(r109->g2m_cost)) : Json("not applicable")},
                        {"boydcarr_g2m", to_string(bc.g2m_cost)}});
    csv << ell << ',' << inst.size() << ',' << to_string(x.objective) << ',' << to_string(s.objective) << ','
        << to_string(opt) << ',' << to_string(ratio) << ',' << to_decimal(ratio) << ','
        << (r109 ? to_string(r109->g2m_cost) : "") << ',' << (r109 ? to_string(r109->ratio) : "") << ','
        << to_string(bc.g2m_cost) << ',' << to_string(bc.ratio) << '\n';
  }
  Json doc{{"schema", "tspgap.family_table"}, {"schema_version", kReportSchemaVersion}, {"non_edge", o.non_edge},
           {"rows", rows}, {"pass", ok}};
  emit(o, o.format == "csv" ? csv.str() : doc.dump(2) + "\n", out);
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact graphical 2-matching and subtour LP ratio certificates", "tspgap"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Write a JSON instance");
  gen->add_option("kind", o.kind, "random or worstcase")->required()->check(CLI::IsMember({"random", "worstcase"}));
  gen->add_option("--n", o.n, "Vertex count for random instances");
  gen->add_option("--seed", o.seed, "Generator seed");
  gen->add_option("--ell", o.ell, "Path length of the worst-case family");
  gen->add_option("--non-edge", o.non_edge, "closure or two");
  gen->add_option("--out", o.out, "Output file (default stdout)");

  auto* run = app.add_subcommand("run", "Run pipelines on an instance and print a report");
  run->add_option("--instance", o.instance, "Instance file (JSON or TSPLIB)")->required();
  run->add_option("--pipeline", o.pipeline, "f2m|subtour|g2m43|g2m109|boydcarr|all");
  run->add_option("--alpha", o.alpha, "Mapping parameter, exact rational");
  run->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--out", o.out, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Run a property suite over seeded random instances");
  verify->add_option("suite", o.suite, "polytopes|oracles|ratios")
      ->required()
      ->check(CLI::IsMember({"polytopes", "oracles", "ratios"}));
  verify->add_option("--n", o.n, "Instance or graph size");
  verify->add_option("--trials", o.trials, "Number of seeded trials");
  verify->add_option("--seed", o.seed, "First seed");
  verify->add_option("--alpha", o.alpha, "Mapping parameter, exact rational");
  verify->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--out", o.out, "Output file (default stdout)");

  auto* family = app.add_subcommand("family", "Ratio table over the worst-case family");
  family->add_option("--ell-max", o.ell_max, "Largest path length");
  family->add_option("--non-edge", o.non_edge, "closure or two");
  family->add_option("--alpha", o.alpha, "Mapping parameter, exact rational");
  family->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
  family->add_option("--out", o.out, "Output file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(o, out);
    if (run->parsed()) return cmd_run(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    return cmd_family(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitFail;
  }
}

}  // namespace tspgap
