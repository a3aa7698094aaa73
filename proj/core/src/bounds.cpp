#include "cubadv/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cubadv/errors.hpp"

namespace cubadv {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("eps must lie in (0, 1)");
}

void require_delta(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw InputError("delta must lie in (0, 1]");
}

void require_positive(std::size_t v, const char* name) {
  if (v == 0) throw InputError(std::string(name) + " must be >= 1");
}

void require_p(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw InputError("p must be > 0");
}

std::optional<double> linear_value(double log_value) {
  if (log_value == kNegInf) return 0.0;
  const double v = std::exp(log_value);
  if (!std::isfinite(v) || !std::isnormal(v)) return std::nullopt;
  return v;
}

BoundReport make_report(Formula f, BoundParameters params, double log_value) {
  BoundReport report;
  report.formula = f;
  report.parameters = params;
  report.log_value = log_value;
  report.value = linear_value(log_value);
  return report;
}

double ln(std::size_t v) { return std::log(static_cast<double>(v)); }

}  // namespace

std::string_view formula_name(Formula f) {
  switch (f) {
    case Formula::kThm2: return "thm2";
    case Formula::kThm3: return "thm3";
    case Formula::kCorollary: return "corollary";
    case Formula::kSukharev: return "sukharev";
    case Formula::kCertificate: return "certificate";
    case Formula::kD0Threshold: return "d0";
  }
  return "unknown";
}

std::optional<Formula> parse_formula(std::string_view name) {
  for (Formula f : {Formula::kThm2, Formula::kThm3, Formula::kCorollary, Formula::kSukharev,
                    Formula::kCertificate, Formula::kD0Threshold}) {
    if (formula_name(f) == name) return f;
  }
  return std::nullopt;
}

double log_two_pi_e() {
  static const double value = std::log(2.0) + std::log(std::numbers::pi) + 1.0;
  return value;
}

double log_eighteen_e_pi() {
  static const double value = std::log(18.0) + 1.0 + std::log(std::numbers::pi);
  return value;
}

BoundReport min_points_thm2(double eps, std::size_t d, double delta) {
  require_eps(eps);
  require_delta(delta);
  require_positive(d, "d");
  double log_value = std::log1p(-eps);
  if (d >= 2) {
    log_value -= static_cast<double>(d) * (std::log(delta) + 0.5 * log_eighteen_e_pi());
  }
  return make_report(Formula::kThm2, {.d = d, .delta = delta, .eps = eps}, log_value);
}

BoundReport min_points_thm3(double eps, std::size_t d, std::size_t r, double p) {
  require_eps(eps);
  require_positive(d, "d");
  require_positive(r, "r");
  require_p(p);
  const double exponent = p * static_cast<double>(d) / static_cast<double>(r + 1);
  const double log_value = std::log1p(-eps) + exponent * ln(d);
  return make_report(Formula::kThm3, {.d = d, .r = r, .p = p, .eps = eps}, log_value);
}

double delta_for_p(std::size_t d, std::size_t r, double p) {
  require_positive(d, "d");
  require_positive(r, "r");
  require_p(p);
  return std::exp(-(p / static_cast<double>(r + 1)) * ln(d) - 0.5 * log_eighteen_e_pi());
}

BoundReport d0_threshold(std::size_t r, double p) {
  require_positive(r, "r");
  require_p(p);
  if (p >= 0.5) throw DivergenceError("d_0 diverges for p >= 1/2");
  const double rr = static_cast<double>(r);
  const double log_d0 = (rr * std::log(rr) + 0.5 * (rr + 1.0) * log_eighteen_e_pi()) / (0.5 - p);
  return make_report(Formula::kD0Threshold, {.r = r, .p = p}, log_d0);
}

BoundReport corollary_bound(double eps, std::size_t d, std::size_t r) {
  require_eps(eps);
  require_positive(d, "d");
  require_positive(r, "r");
  const double rr = static_cast<double>(r);
  const double p_star = (rr + 1.0) / (2.0 * rr + 3.0);
  const double log_d0 = d0_threshold(r, p_star).log_value;
  const double coeff = p_star / (rr + 1.0);
  // ln c_r = -coeff * d_0 * ln d_0; d_0 = e^{log_d0} may not fit in a double.
  const double log_neg_log_c = std::log(coeff) + log_d0 + std::log(log_d0);
  const double log_c = -std::exp(log_neg_log_c);

  const double log_value =
      log_c + std::log1p(-eps) + (static_cast<double>(d) / (2.0 * rr + 3.0)) * ln(d);
  BoundReport report = make_report(Formula::kCorollary, {.d = d, .r = r, .eps = eps}, log_value);
  report.derived["p_star"] = p_star;
  report.derived["log_d0"] = log_d0;
  report.derived["log_c_r"] = log_c;
  report.derived["log_neg_log_c_r"] = log_neg_log_c;
  return report;
}

double sukharev_error(std::size_t d, std::size_t n) {
  require_positive(d, "d");
  require_positive(n, "n");
  const double dd = static_cast<double>(d);
  return dd / (2.0 * dd + 2.0) * std::exp(-ln(n) / dd);
}

BoundReport sukharev_report(std::size_t d, std::size_t n) {
  require_positive(d, "d");
  require_positive(n, "n");
  const double dd = static_cast<double>(d);
  const double log_value = std::log(dd / (2.0 * dd + 2.0)) - ln(n) / dd;
  BoundReport report = make_report(Formula::kSukharev, {.d = d, .n = n}, log_value);
  report.value = sukharev_error(d, n);
  return report;
}

double fooling_certificate(std::size_t n, std::size_t d, double delta) {
  require_positive(n, "n");
  require_delta(delta);
  if (d == 0) throw InputError("d must be >= 1");
  if (d == 1) throw UnsupportedError("fooling certificate requires d >= 2");
  const double log_mass =
      ln(n) + static_cast<double>(d) * (std::log(3.0 * delta) + 0.5 * log_two_pi_e());
  if (log_mass >= 0.0) return 0.0;
  return -std::expm1(log_mass);
}

BoundReport certificate_report(std::size_t n, std::size_t d, double delta) {
  const double value = fooling_certificate(n, d, delta);
  BoundReport report;
  report.formula = Formula::kCertificate;
  report.parameters = {.d = d, .n = n, .delta = delta};
  report.log_value = value > 0.0 ? std::log(value) : kNegInf;
  report.value = value;
  return report;
}

}  // namespace cubadv
