// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tspgap/errors.hpp"
#include "tspgap/gadgets.hpp"
#include "tspgap/subtour.hpp"
#include "tspgap/twomo.hpp"

using namespace tspgap;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) note << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

int failures = 0;

void report(int id, const char* title, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.note << "exception: " << e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("criterion %d [%s] %s: %s(%.1fs)\n", id, v.pass ? "PASS" : "FAIL", title, v.note.str().c_str(), secs);
  std::fflush(stdout);
  failures += v.pass ? 0 : 1;
}

std::vector<MetricInstance> random_suite() {
  std::vector<MetricInstance> out;
  for (int t = 0; t < 50; ++t) out.push_back(gen_random_metric(5 + t % 5, 2024 + t));
  return out;
}

struct WithF2M {
  std::string label;
  MetricInstance instance;
  FractionalTwoMatching x;
};

std::vector<WithF2M> f2m_suite() {
  std::vector<WithF2M> out;
  int t = 0;
  for (auto& inst : random_suite()) {
    auto x = solve_f2m(inst);
    out.push_back({"random#" + std::to_string(t++), std::move(inst), std::move(x)});
  }
  for (int handle = 2; handle <= 3; ++handle) {
    for (int cut = 1; cut <= 5; ++cut) {
      auto f = fixture::cut_path_instance(handle, cut);
      auto x = make_f2m(f.instance, f.x);
      out.push_back({"cutpath(" + std::to_string(handle) + "," + std::to_string(cut) + ")", std::move(f.instance),
                     std::move(x)});
    }
  }
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto f = fixture::random_structured_f2m(seed);
    auto x = make_f2m(f.instance, f.x);
    out.push_back({"structured#" + std::to_string(seed), std::move(f.instance), std::move(x)});
  }
  for (int ell = 1; ell <= 6; ++ell) {
    auto fam = gen_worst_case_family(ell);
    auto x = solve_f2m(fam.instance);
    out.push_back({"family ell=" + std::to_string(ell), std::move(fam.instance), std::move(x)});
  }
  return out;
}

// Independent recomputation of the gadget accounting identities.
void check_identities(const GadgetGraph& gg, const FractionalComponent& comp, Verdict& v, int& graphs) {
  ++graphs;
  Rat cut_paths = 0;
  for (const auto& p : comp.paths) {
    if (p.cut) cut_paths += p.cost;
  }
  Rat total = 0;
  for (const auto& e : gg.graph.edges()) total += e.cost;
  const Rat& P = comp.path_cost;
  const Rat& C = comp.cycle_cost;
  const Rat expected = gg.construction == Construction::kCutPath ? Rat((P - cut_paths) + 4 * cut_paths - C) : Rat(P - C);
  v.require(total == expected, "G' total cost");
  for (const auto& g : gg.gadgets) {
    const auto& path = comp.paths[g.path];
    Rat in_g = 0, signed_sum = 0;
    std::vector<Rat> signed_costs;
    for (const auto& pat : g.patterns) {
      Rat kept = 0;
      for (int k = 0; k < path.length(); ++k) kept += pat.multiplicity[k] * path.edge_costs[k];
      in_g += kept;
      signed_costs.push_back(kept - path.cost);
      signed_sum += kept - path.cost;
      v.require(pat.cost_in_g == kept && pat.signed_cost == kept - path.cost, "pattern cost bookkeeping");
    }
    v.require(in_g == 4 * path.cost, "patterns sum to 4P");
    v.require(signed_sum == path.cost, "signed patterns sum to P");
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) v.require(signed_costs[a] + signed_costs[b] >= 0, "pairwise nonnegative");
    }
    if (gg.construction == Construction::kAllPaths) {
      Rat edge_sum = 0;
      for (EdgeId id : g.pattern_edge) edge_sum += gg.graph.edge(id).cost;
      v.require(edge_sum == path.cost, "pattern edges sum to P");
    }
  }
  if (gg.construction == Construction::kAllPaths) {
    auto x = feasible_point_109(gg);
    Rat value = 0;
    for (const auto& e : gg.graph.edges()) value += x[e.id] * e.cost;
    v.require(value == make_rat(1, 9) * P - make_rat(4, 9) * C, "P/9 - 4C/9 point cost");
  }
}

}  // namespace

int main() {
  const Rat ten_ninths = make_rat(10, 9);
  const Rat four_thirds = make_rat(4, 3);
  const auto suite = f2m_suite();

  report(1, "Boyd-Carr end-to-end, 50 random metrics n=5..9 plus fractional extras", [&](Verdict& v) {
    Rat worst = 0;
    int count = 0, fractional = 0;
    auto run = [&](const MetricInstance& inst) {
      auto r = g2m_from_subtour(inst);
      v.require(r.g2m_cost <= ten_ninths * r.subtour.objective, "G2M <= 10/9 subtour");
      v.require(r.two_matching_cost <= ten_ninths * r.subtour.objective, "2M <= 10/9 subtour");
      v.require(r.two_matching_cost <= r.g2m_cost, "2M <= G2M");
      v.require(!validate_g2m(r.g2m), "valid G2M");
      worst = std::max(worst, Rat(r.two_matching_cost / r.subtour.objective));
      fractional += std::any_of(r.subtour.values.begin(), r.subtour.values.end(),
                                [](const Rat& x) { return x != 0 && x != 1; });
      ++count;
    };
    for (const auto& inst : random_suite()) run(inst);
    v.note << count << " random";
    for (int ell = 1; ell <= 5; ++ell) run(gen_worst_case_family(ell).instance);
    for (std::uint64_t seed = 0; seed < 20; ++seed) run(fixture::random_structured_f2m(seed).instance);
    v.note << " + " << count - 50 << " extra instances, " << fractional
           << " with fractional subtour optimum, max 2M/subtour = " << to_string(worst) << " ";
  });

  report(2, "4/3 theorem, g2m43 <= 4/3 F2M", [&](Verdict& v) {
    int count = 0, with_cut = 0;
    Rat worst = 0;
    for (const auto& w : suite) {
      auto r = g2m_from_f2m_43(w.instance, w.x);
      v.require(r.g2m_cost <= four_thirds * r.f2m_cost, w.label);
      v.require(!validate_g2m(r.g2m), w.label + " valid");
      with_cut += has_cut_edge(r.decomposition) ? 1 : 0;
      worst = std::max(worst, r.ratio);
      ++count;
    }
    v.require(with_cut > 0, "some instance has a cut path");
    v.note << count << " instances (" << with_cut << " with cut paths), max ratio " << to_string(worst) << " ";
  });

  report(3, "10/9 no-cut-edge theorem, g2m109 <= 10/9 F2M", [&](Verdict& v) {
    int count = 0, family = 0;
    Rat worst = 0;
    for (const auto& w : suite) {
      auto r = g2m_from_f2m_109(w.instance, w.x);
      if (!r) {
        v.require(has_cut_edge(decompose(w.instance, w.x)), w.label + " skipped without a cut edge");
        continue;
      }
      v.require(r->g2m_cost <= ten_ninths * r->f2m_cost, w.label);
      v.require(!validate_g2m(r->g2m), w.label + " valid");
      worst = std::max(worst, r->ratio);
      family += w.label.rfind("family", 0) == 0 ? 1 : 0;
      ++count;
    }
    v.require(family == 6, "family ell=1..6 included");
    v.note << count << " instances without cut edge, max ratio " << to_string(worst) << " ";
  });

  report(4, "Naddef-Pulleyblank 1/3 bound, random cubic graphs", [&](Verdict& v) {
    int count = 0, negative = 0;
    for (int t = 0; t < 120; ++t) {
      const int n = 4 + 2 * (t % 6);
      auto g = gen_random_cubic(n, 77 + t);
      auto np = np_bound_check(g);
      v.require(np.bound_holds && np.matching.total_cost <= g.total_cost() / 3, "matching <= c(E)/3");
      v.require(!check_matching_polytope_point(g, std::vector<Rat>(g.num_edges(), make_rat(1, 3))),
                "1/3 point in matching polytope");
      bool pos = false, neg = false;
      for (const auto& e : g.edges()) {
        pos = pos || e.cost > 0;
        neg = neg || e.cost < 0;
      }
      negative += pos && neg ? 1 : 0;
      ++count;
    }
    v.note << count << " graphs on 4..14 vertices, " << negative << " with mixed signs ";
  });

  report(5, "Blossom equals brute force", [&](Verdict& v) {
    std::mt19937_64 rng(5);
    int compared = 0, infeasible = 0;
    for (int t = 0; t < 320; ++t) {
      const int n = 2 * (1 + static_cast<int>(rng() % 6));
      MultiGraph g(n);
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          const int copies = static_cast<int>(rng() % 4) - 1;
          for (int c = 0; c < copies; ++c) g.add_edge(a, b, make_rat(static_cast<long>(rng() % 41) - 20, 1 + rng() % 6));
        }
      }
      auto all = oracle::all_perfect_matchings(g);
      if (all.empty()) {
        bool threw = false;
        try {
          min_cost_perfect_matching(g);
        } catch (const NoPerfectMatchingError&) {
          threw = true;
        }
        v.require(threw, "infeasible graph detected");
        ++infeasible;
        continue;
      }
      Rat best = 0;
      for (std::size_t k = 0; k < all.size(); ++k) {
        Rat c = 0;
        for (EdgeId id : all[k]) c += g.edge(id).cost;
        if (k == 0 || c < best) best = c;
      }
      v.require(min_cost_perfect_matching(g).total_cost == best, "cost equality");
      ++compared;
    }
    v.require(compared >= 200, "at least 200 compared");
    v.note << compared << " multigraphs with <= 12 vertices compared, " << infeasible << " infeasible agreed ";
  });

  report(6, "2MO membership of alpha=1/9 image, subtour optima n<=6, full enumeration", [&](Verdict& v) {
    int count = 0, fractional = 0;
    TwoMOCheckStats stats;
    auto run = [&](const MetricInstance& inst, const std::vector<Rat>& x) {
      auto s = split_graph(inst);
      auto bad = check_2mo_polytope(s, map_subtour_to_2mo(s, x, make_rat(1, 9)), &stats, true);
      v.require(!bad, bad ? bad->describe() : "");
      fractional += std::any_of(x.begin(), x.end(), [](const Rat& q) { return q != 0 && q != 1; });
      ++count;
    };
    for (int t = 0; t < 24; ++t) {
      auto inst = gen_random_metric(3 + t % 4, 300 + t);
      run(inst, solve_subtour_lp(inst).values);
    }
    // Prisms whose rungs are cheaper than their triangle edges: the subtour
    // optimum puts one half on the triangles and one on the rungs.
    for (int t = 0; t < 8; ++t) {
      std::mt19937_64 rng(60 + t);
      std::vector<WeightedPair> edges;
      auto tri = [&] { return make_rat(4 + static_cast<long>(rng() % 4), 1); };
      for (int side = 0; side < 2; ++side) {
        const int o = 3 * side;
        edges.push_back({o, o + 1, tri()});
        edges.push_back({o + 1, o + 2, tri()});
        edges.push_back({o, o + 2, tri()});
      }
      for (int k = 0; k < 3; ++k) edges.push_back({k, k + 3, make_rat(1 + static_cast<long>(rng() % 3), 1)});
      auto inst = metric_closure(6, edges);
      run(inst, solve_subtour_lp(inst).values);
    }
    auto fam = gen_worst_case_family(1);
    run(fam.instance, fam.certificate);
    v.note << count << " instances (" << fractional << " fractional), " << stats.sets << " sets S, "
           << stats.matchings << " odd matchings evaluated ";
  });

  report(7, "Worst-case family ratio optimal 2M / subtour, ell=1..5", [&](Verdict& v) {
    const std::vector<Rat> pinned{Rat(1), make_rat(10, 9), make_rat(13, 12), make_rat(16, 15), make_rat(10, 9)};
    std::vector<Rat> ratios;
    for (int ell = 1; ell <= 5; ++ell) {
      auto fam = gen_worst_case_family(ell);
      const Rat opt = cost(optimal_two_matching(fam.instance), fam.instance);
      if (ell <= 2) v.require(opt == *oracle::brute_force_two_matching(fam.instance), "reduction equals 2-factor enumeration");
      const Rat sub = solve_subtour_lp(fam.instance).objective;
      ratios.push_back(opt / sub);
      v.note << to_string(ratios.back()) << (ell < 5 ? ", " : " ");
    }
    bool bounded = true, monotone = true;
    for (std::size_t k = 0; k < ratios.size(); ++k) {
      bounded = bounded && ratios[k] <= make_rat(10, 9);
      if (k > 0) monotone = monotone && ratios[k] >= ratios[k - 1];
    }
    v.note << "| <= 10/9 " << (bounded ? "yes" : "NO") << ", pinned " << (ratios == pinned ? "yes" : "NO")
           << ", monotone " << (monotone ? "yes" : "NO") << " ";
    v.require(bounded, "ratio <= 10/9");
    v.require(ratios == pinned, "pinned values");
    v.require(monotone, "monotone nondecreasing");
  });

  report(8, "Cutting planes equal the fully enumerated subtour LP, n<=8", [&](Verdict& v) {
    int count = 0, with_cuts = 0;
    for (int t = 0; t < 36; ++t) {
      MetricInstance inst = gen_random_metric(4 + t % 5, 800 + t);
      if (t % 3 == 2) {
        // Clustered instance: two far groups force subtour cuts.
        std::mt19937_64 rng(t);
        const int n = 6 + t % 3;
        std::vector<WeightedPair> edges;
        for (int a = 0; a < n; ++a) {
          for (int b = a + 1; b < n; ++b) {
            const bool same = (a < n / 2) == (b < n / 2);
            edges.push_back({a, b, same ? make_rat(1 + static_cast<long>(rng() % 4), 1) : Rat(30 + static_cast<long>(rng() % 5))});
          }
        }
        inst = metric_closure(n, edges);
      }
      auto s = solve_subtour_lp(inst);
      v.require(s.objective == oracle::subtour_lp_enumerated(inst), "objective equality");
      v.require(!verify_subtour_feasible(inst, s.values), "feasible by enumeration");
      with_cuts += s.cut_pool.empty() ? 0 : 1;
      ++count;
    }
    v.require(with_cuts > 0, "some instance needed cuts");
    v.note << count << " instances, " << with_cuts << " needed cuts ";
  });

  report(9, "Gadget accounting identities on every constructed gadget graph", [&](Verdict& v) {
    int graphs = 0;
    for (const auto& w : suite) {
      auto d = decompose(w.instance, w.x);
      for (const auto& comp : d.fractional_components) {
        check_identities(build_cutpath_gadgets(comp), comp, v, graphs);
        if (!comp.has_cut_path()) {
          check_identities(build_contracted(comp), comp, v, graphs);
          check_identities(build_all_path_gadgets(comp), comp, v, graphs);
        }
      }
    }
    v.note << graphs << " gadget graphs ";
  });

  std::printf("acceptance: %d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
