#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tspgap/cli.hpp"
#include "tspgap/errors.hpp"
#include "tspgap/f2m.hpp"
#include "tspgap/gadgets.hpp"
#include "tspgap/instance.hpp"
#include "tspgap/report.hpp"
#include "tspgap/subtour.hpp"
#include "tspgap/twomo.hpp"

namespace py = pybind11;
using namespace tspgap;

namespace {

py::object fraction(const Rat& r) {
  return py::module_::import("fractions").attr("Fraction")(to_string(r));
}

py::list fractions(const std::vector<Rat>& values) {
  py::list out;
  for (const Rat& v : values) out.append(fraction(v));
  return out;
}

Rat to_rat(const py::handle& value) { return parse_rat(py::str(value).cast<std::string>()); }

py::object json_to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::list cycles(const TwoMatching& t) {
  py::list out;
  for (const auto& c : t.cycles) out.append(py::cast(c));
  return out;
}

py::dict g2m_dict(const G2MPipelineResult& r) {
  py::dict d;
  d["f2m_cost"] = fraction(r.f2m_cost);
  d["cost"] = fraction(r.g2m_cost);
  d["ratio"] = fraction(r.ratio);
  d["multiplicity"] = py::cast(r.g2m.multiplicity);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact TSP relaxation pipelines over rational metric instances";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

  py::class_<MetricInstance>(m, "Instance")
      .def(py::init([](int n, const py::sequence& costs) {
             std::vector<Rat> upper;
             for (const auto& c : costs) upper.push_back(to_rat(c));
             return MetricInstance(n, std::move(upper));
           }),
           py::arg("n"), py::arg("costs"),
           "Complete instance from its upper-triangle costs in row-major order.")
      .def_static("parse", [](const std::string& text) { return parse_instance(text); }, py::arg("text"))
      .def_static("random", [](int n, std::uint64_t seed) { return gen_random_metric(n, seed); }, py::arg("n"),
                  py::arg("seed"))
      .def_property_readonly("n", &MetricInstance::size)
      .def_property_readonly("num_edges", &MetricInstance::num_edges)
      .def_property_readonly("metric", &MetricInstance::metric)
      .def_property_readonly("costs", [](const MetricInstance& inst) { return fractions(inst.costs()); })
      .def("cost", [](const MetricInstance& inst, int i, int j) { return fraction(inst.cost(i, j)); })
      .def("edge_index", &MetricInstance::edge_index)
      .def("edge_endpoints", &MetricInstance::edge_endpoints)
      .def("to_json", [](const MetricInstance& inst) { return instance_to_json(inst); })
      .def("digest", [](const MetricInstance& inst) { return instance_digest(inst); })
      .def("__eq__", [](const MetricInstance& a, const MetricInstance& b) { return a == b; })
      .def("__repr__", [](const MetricInstance& inst) {
        return "<Instance n=" + std::to_string(inst.size()) + " digest=" + instance_digest(inst) + ">";
      });

  m.def(
      "worst_case_family",
      [](int ell, const std::string& non_edge) {
        NonEdgeCost mode;
        if (non_edge == "closure") {
          mode = NonEdgeCost::kMetricClosure;
        } else if (non_edge == "two") {
          mode = NonEdgeCost::kTwo;
        } else {
          throw PreconditionError("non_edge must be 'closure' or 'two'");
        }
        auto fam = gen_worst_case_family(ell, mode);
        return py::make_tuple(fam.instance, fractions(fam.certificate));
      },
      py::arg("ell"), py::arg("non_edge") = "closure",
      "Two triangles joined by three paths of ell unit edges, with the half/one certificate.");

  m.def(
      "solve_f2m",
      [](const MetricInstance& inst) {
        auto x = solve_f2m(inst);
        py::dict d;
        d["values"] = fractions(x.values);
        d["objective"] = fraction(x.objective);
        return d;
      },
      py::arg("instance"));

  m.def(
      "solve_subtour",
      [](const MetricInstance& inst) {
        auto s = solve_subtour_lp(inst);
        py::dict d;
        d["values"] = fractions(s.values);
        d["objective"] = fraction(s.objective);
        d["cuts"] = py::cast(s.cut_pool);
        d["objective_trace"] = fractions(s.objective_trace);
        return d;
      },
      py::arg("instance"));

  m.def(
      "g2m_43",
      [](const MetricInstance& inst) { return g2m_dict(g2m_from_f2m_43(inst, solve_f2m(inst))); },
      py::arg("instance"));

  m.def(
      "g2m_109",
      [](const MetricInstance& inst) -> py::object {
        auto r = g2m_from_f2m_109(inst, solve_f2m(inst));
        if (!r) return py::none();
        return g2m_dict(*r);
      },
      py::arg("instance"), "None when the optimal fractional 2-matching has a cut edge.");

  m.def(
      "boyd_carr",
      [](const MetricInstance& inst, const py::object& alpha) {
        auto r = g2m_from_subtour(inst, to_rat(alpha));
        py::dict d;
        d["subtour"] = fraction(r.subtour.objective);
        d["point_cost"] = fraction(r.point_cost);
        d["g2m_cost"] = fraction(r.g2m_cost);
        d["two_matching_cost"] = fraction(r.two_matching_cost);
        d["ratio"] = fraction(r.ratio);
        d["cycles"] = cycles(r.two_matching);
        d["g2m_within_bound"] = r.g2m_within_bound;
        return d;
      },
      py::arg("instance"), py::arg("alpha") = "1/9");

  m.def(
      "optimal_two_matching",
      [](const MetricInstance& inst) {
        auto t = optimal_two_matching(inst);
        py::dict d;
        d["cost"] = fraction(cost(t, inst));
        d["cycles"] = cycles(t);
        return d;
      },
      py::arg("instance"));

  m.def(
      "run_report",
      [](const MetricInstance& inst, const std::string& pipeline, const py::object& alpha) {
        auto which = parse_pipeline(pipeline);
        if (!which) throw PreconditionError("unknown pipeline '" + pipeline + "'");
        return json_to_py(run_report(inst, *which, to_rat(alpha)).to_json());
      },
      py::arg("instance"), py::arg("pipeline") = "all", py::arg("alpha") = "1/9",
      "Report as a dict in the tspgap.run_report schema.");

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line tool in-process. Returns (exit_code, stdout, stderr).");
}
