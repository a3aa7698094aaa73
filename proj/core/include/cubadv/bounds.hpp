#pragma once

// Closed-form lower bounds on the information complexity n(ε, F_d) of
// integration, plus the worst-case error certificate for a fixed node count.
// Every quantity is carried as a natural log; linear values are attached only
// when they fit in a double.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace cubadv {

enum class Formula { kThm2, kThm3, kCorollary, kSukharev, kCertificate, kD0Threshold };

std::string_view formula_name(Formula f);

/// Parses "thm2", "thm3", "corollary", "sukharev", "certificate", "d0".
std::optional<Formula> parse_formula(std::string_view name);

struct BoundParameters {
  std::optional<std::size_t> d{};
  std::optional<std::size_t> r{};
  std::optional<std::size_t> n{};
  std::optional<double> delta{};
  std::optional<double> p{};
  std::optional<double> eps{};
};

struct BoundReport {
  Formula formula = Formula::kThm2;
  BoundParameters parameters;
  /// ln of the bound; -inf marks a bound clamped to 0 or an underflowed constant.
  double log_value = 0.0;
  /// exp(log_value) when it is a normal double (or exactly 0 for -inf); empty otherwise.
  std::optional<double> value;
  /// Derived quantities (p*, ln d_0, ln c_r, ...) keyed by name.
  std::map<std::string, double> derived;
};

/// Natural-log constants ln(2πe) and ln(18eπ), built from std::numbers.
double log_two_pi_e();
double log_eighteen_e_pi();

/// n ≥ (1-ε)(δ sqrt(18eπ))^{-d} for d ≥ 2 and n ≥ 1-ε for d = 1.
BoundReport min_points_thm2(double eps, std::size_t d, double delta);

/// n ≥ (1-ε) d^{p d/(r+1)}.
BoundReport min_points_thm3(double eps, std::size_t d, std::size_t r, double p);

/// δ = d^{-p/(r+1)} / sqrt(18eπ).
double delta_for_p(std::size_t d, std::size_t r, double p);

/// ln d_0 with d_0 = (r^r (18eπ)^{(r+1)/2})^{1/(1/2-p)}. Throws DivergenceError for p ≥ 1/2.
BoundReport d0_threshold(std::size_t r, double p);

/// c_r (1-ε) d^{d/(2r+3)} with ln c_r = -(p*/(r+1)) d_0 ln d_0 at p* = (r+1)/(2r+3).
/// When d_0 itself overflows a double, ln c_r is reported as -inf and
/// derived["log_neg_log_c_r"] carries ln(-ln c_r).
BoundReport corollary_bound(double eps, std::size_t d, std::size_t r);

/// (d/(2d+2)) n^{-1/d}: the optimal product-midpoint error for the
/// ℓ∞-Lipschitz class, a different class from the smoothed ones above.
double sukharev_error(std::size_t d, std::size_t n);
BoundReport sukharev_report(std::size_t d, std::size_t n);

/// max(0, 1 - n (3δ sqrt(2πe))^d): lower bound on the worst-case error of any
/// algorithm that samples at n points. Throws UnsupportedError for d = 1.
double fooling_certificate(std::size_t n, std::size_t d, double delta);
BoundReport certificate_report(std::size_t n, std::size_t d, double delta);

}  // namespace cubadv
