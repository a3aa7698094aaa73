#include "report_json.hpp"

#include <cmath>

namespace cubadv::cli {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json to_json(const BoundReport& report, bool log_only) {
  Json params = Json::object();
  const auto& p = report.parameters;
  if (p.d) params["d"] = *p.d;
  if (p.r) params["r"] = *p.r;
  if (p.n) params["n"] = *p.n;
  if (p.delta) params["delta"] = *p.delta;
  if (p.p) params["p"] = *p.p;
  if (p.eps) params["eps"] = *p.eps;

  Json out;
  out["formula_id"] = std::string(formula_name(report.formula));
  out["parameters"] = std::move(params);
  out["log_value"] = number_or_null(report.log_value);
  out["value"] = (!log_only && report.value) ? number_or_null(*report.value) : Json(nullptr);
  Json derived = Json::object();
  for (const auto& [key, v] : report.derived) derived[key] = number_or_null(v);
  out["derived"] = std::move(derived);
  return out;
}

Json to_json(const MCEstimate& e) {
  return Json{{"mean", number_or_null(e.mean)},
              {"std_error", number_or_null(e.std_error)},
              {"samples", e.samples},
              {"seed", e.seed}};
}

Json to_json(const AttackReport& r) {
  Json out;
  out["nodes"] = Json{{"n", r.n}, {"d", r.d}};
  out["delta"] = r.delta;
  out["r"] = r.order;
  out["certificate_analytic"] = Json{{"value", r.certificate_analytic}, {"kind", "proved"}};
  out["certificate_union_bound"] = Json{{"value", r.certificate_union_bound}, {"kind", "proved"}};
  out["measure_estimate"] = to_json(r.measure_estimate);
  out["certificate_mc"] = Json{{"value", r.certificate_mc},
                               {"radius", r.certificate_mc_radius},
                               {"kind", "statistical"}};
  out["integral_estimate"] = to_json(r.integral_estimate);
  out["node_audit"] = r.node_audit;

  const double integral_radius = 3.0 * std::hypot(r.integral_estimate.std_error,
                                                  r.measure_estimate.std_error);
  out["consistency"] = Json{
      {"analytic_le_mc", r.certificate_analytic <= r.certificate_mc + r.certificate_mc_radius},
      {"integral_ge_mc", r.integral_estimate.mean >= r.certificate_mc - integral_radius},
      {"node_audit_zero", r.node_audit == 0.0},
  };
  return out;
}

Json to_json(const CheckOutcome& o) {
  return Json{{"property_id", std::string(property_name(o.property))},
              {"condition", o.condition},
              {"passed", o.passed},
              {"inconclusive", o.inconclusive},
              {"observed", number_or_null(o.observed)},
              {"observed_std_error", number_or_null(o.observed_std_error)},
              {"bound", number_or_null(o.bound)},
              {"tolerance", o.tolerance},
              {"trials", o.trials},
              {"seed", o.seed}};
}

Json envelope(const std::string& subcommand, Json config, Json result) {
  Json out;
  out["schema"] = kSchemaVersion;
  out["subcommand"] = subcommand;
  out["config"] = std::move(config);
  out["result"] = std::move(result);
  return out;
}

}  // namespace cubadv::cli
