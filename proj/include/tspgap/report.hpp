#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tspgap/f2m.hpp"
#include "tspgap/gadgets.hpp"
#include "tspgap/instance.hpp"
#include "tspgap/subtour.hpp"
#include "tspgap/twomo.hpp"

namespace tspgap {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

/// Exact value as {"exact": "a/b", "decimal": "0.123456"}.
Json rat_json(const Rat& value);

Json to_json(const FractionalTwoMatching& x, const MetricInstance& inst);
Json to_json(const F2MDecomposition& d);
Json to_json(const SubtourSolution& s, const MetricInstance& inst);
Json to_json(const GraphicalTwoMatching& g);
Json to_json(const TwoMatching& t);

/// Certificate of a gadget pipeline against `bound` times the F2M cost.
Json g2m_certificate(const G2MPipelineResult& r, const MetricInstance& inst, const Rat& bound);
Json boydcarr_certificate(const BoydCarrResult& r, const MetricInstance& inst);

enum class Pipeline { kF2M, kSubtour, kG2M43, kG2M109, kBoydCarr, kAll };
std::optional<Pipeline> parse_pipeline(const std::string& name);
const char* to_string(Pipeline p);

/// One row per pipeline that ran. `status` is "ok", "not applicable" or
/// "error"; `pass` is meaningful for "ok" rows with a bound.
struct PipelineRow {
  std::string pipeline;
  std::string status = "ok";
  std::string detail;  // reason for "not applicable", message for "error"
  std::optional<Rat> cost;
  std::optional<Rat> reference;  // F2M or subtour value the bound applies to
  std::optional<Rat> bound;      // ratio bound
  std::optional<Rat> ratio;      // cost / reference
  bool pass = true;
  Json certificate;
};

struct RunReport {
  int n = 0;
  std::string digest;
  Rat alpha;
  std::vector<PipelineRow> rows;

  bool pass() const;
  Json to_json() const;
  std::string to_csv() const;
};

/// Runs the requested pipelines. "all" adds the exact optimal 2-matching for
/// n <= 10. Invariant failures become "error" rows tagged with their stage
/// and make the report fail.
RunReport run_report(const MetricInstance& inst, Pipeline which, const Rat& alpha = make_rat(1, 9));

}  // namespace tspgap
