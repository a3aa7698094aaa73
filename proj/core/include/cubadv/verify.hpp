#pragma once

// Statistical checks of the convolution-smoothing properties and of class
// membership for the smoothed fooling function.
//
// Every check is one-sided: it samples finitely many points, pairs and
// directions, so a pass never proves the supremum bound, while a failure is a
// concrete counterexample (up to the stated statistical tolerance).
//
// Finite differences are taken with common random numbers: all stencil points
// of one estimate share each ball draw, so the estimator is the Monte Carlo
// mean of the same finite difference applied to the base function.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubadv/fooling.hpp"
#include "cubadv/geometry.hpp"
#include "cubadv/rng.hpp"

namespace cubadv {

enum class Property {
  kConvI,
  kConvII,
  kConvIII,
  kConvIV,
  kConvV,
  kClassNorm,
  kClassLip,
  kClassDLip,
  kTildeClass,
};

std::string_view property_name(Property p);

struct CheckOutcome {
  Property property = Property::kConvI;
  std::string condition;  // e.g. "k=2" or "nodes"
  bool passed = false;    // observed <= bound * (1 + tolerance)
  bool inconclusive = false;  // Monte Carlo noise too large to decide
  double observed = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  double observed_std_error = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

/// passed and not inconclusive.
bool failed(const CheckOutcome& outcome);

using PointSampler = std::function<void(Rng&, std::span<double>)>;
using StencilFn = std::function<EvalResult(std::span<const std::vector<double>>,
                                           std::span<const double>, std::size_t, std::uint64_t)>;

/// A base function together with its smoothing, as seen by the checks.
struct VerifyTarget {
  ScalarField base;
  SmoothingSchedule schedule;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  /// Where base points of pairs and stencils are drawn.
  PointSampler sample_point;
  /// Optional specialized CRN stencil estimator; defaults to stencil_eval_generic.
  StencilFn stencil;

  EvalResult estimate(std::span<const std::vector<double>> points,
                      std::span<const double> weights, std::size_t samples,
                      std::uint64_t stream) const;
};

/// Target view of a fooling function. Base points are drawn uniformly in the
/// ball of radius 3δ sqrt d around a random node, where f_r is not constant.
/// The target refers to `f`, which must outlive it.
VerifyTarget make_target(const FoolingFunction& f);

/// Target for an arbitrary base with base points uniform in [lower, upper].
VerifyTarget make_target(ScalarField base, SmoothingSchedule schedule, std::vector<double> lower,
                         std::vector<double> upper, std::uint64_t seed);

struct VerifyBudget {
  std::size_t range_points = 2'000;
  std::size_t lip_pairs = 10'000;
  std::size_t pair_samples = 128;
  std::size_t directions = 16;
  std::size_t derivative_samples = 200'000;
  std::size_t integral_samples = 20'000;
  std::size_t inner_samples = 256;
  /// Finite-difference step as a fraction of δ.
  double step_fraction = 1.0 / 20.0;
  unsigned threads = 1;

  /// Multiplies every count by `factor` (at least 1 each).
  VerifyBudget scaled(double factor) const;
};

// --- property (i): vanishing near the nodes ---------------------------------

/// f_r on the Monte Carlo path at every node, then at further nodes with fresh
/// streams up to `trials` evaluations. Passes iff every value is exactly 0.
CheckOutcome check_vanishing(const FoolingFunction& f, std::size_t trials);

/// Generic form: f_r at each point of `omega` must be exactly 0.
CheckOutcome check_vanishing(const VerifyTarget& target,
                             std::span<const std::vector<double>> omega, std::size_t samples);

// --- property (ii): Lipschitz constant is not increased ---------------------

/// Ratio |f_r(x) - f_r(y)| / ||x - y|| over random nearby pairs with common
/// random numbers against `lip_bound`; tolerance 0.
CheckOutcome check_lip(const VerifyTarget& target, double lip_bound, std::size_t pairs,
                       std::size_t samples_per_pair, std::uint64_t seed, unsigned threads = 1,
                       Property property = Property::kConvII);

/// Fooling form with bound Lip(f_0) = 1/(δ sqrt d).
CheckOutcome check_lip(const FoolingFunction& f, std::size_t pairs, std::uint64_t seed,
                       std::size_t samples_per_pair = 128, unsigned threads = 1);

// --- property (iii): integral lower bound survives smoothing ----------------

/// observed = eps - estimate, bound = 3 * std_error, tolerance 0.
CheckOutcome check_integral_floor(double eps, double estimate, double std_error,
                                  std::size_t samples, std::uint64_t seed, std::string condition);

// --- properties (iv)/(v): Lipschitz constants of directional derivatives ----

struct DifferenceRatio {
  double value = 0.0;  // |k-th difference quotient at x - same at y| / ||x - y||
  double std_error = 0.0;
};

/// CRN estimate of the Lipschitz ratio of the k-th order central difference
/// quotient along `directions` (step h) between x and y.
DifferenceRatio difference_quotient_ratio(const VerifyTarget& target,
                                          std::span<const double> x, std::span<const double> y,
                                          std::span<const std::vector<double>> directions,
                                          double h, std::size_t samples, std::uint64_t stream);

struct DerivativeCheckConfig {
  std::size_t order = 1;  // k
  std::size_t trials = 16;
  double h = 0.0;           // step; also the base-point separation
  std::size_t samples = 200'000;
  std::uint64_t seed = 0;
  double bound = 0.0;
  double tolerance = 0.1;
  unsigned threads = 1;
};

/// Max over trials of difference_quotient_ratio with random base points and
/// directions uniform on the sphere. Inconclusive when 3σ of a trial exceeds
/// tolerance * bound.
CheckOutcome check_difference_lip(const VerifyTarget& target, const DerivativeCheckConfig& config,
                                  Property property, std::string condition);

/// Fooling form: bound (1/(δ sqrt d)) Π_{k largest α} 1/(δ α), step h
/// (default δ/20), tolerance 0.1 plus (h/δ)^2.
CheckOutcome check_derivative_lip(const FoolingFunction& f, std::size_t k, std::size_t directions,
                                  double h, std::uint64_t seed, std::size_t samples = 200'000,
                                  unsigned threads = 1);

// --- class membership --------------------------------------------------------

/// Sampled max |f_r| against 1.
CheckOutcome check_range(const FoolingFunction& f, std::size_t points, std::uint64_t seed,
                         Property property = Property::kClassNorm);

/// Range, Lipschitz and k = 1..r derivative conditions of F_{d,r,δ}.
/// Requires the default schedule α_j = 1/r.
std::vector<CheckOutcome> check_class_membership(const FoolingFunction& f,
                                                 const VerifyBudget& budget, std::uint64_t seed);

/// Lipschitz bound of the tilde class: d^{-1/2 + p/(r+1)} sqrt(18eπ).
double tilde_lip_bound(std::size_t d, std::size_t r, double p);

/// k-th derivative bound of the tilde class: d^{-1/2 + p(k+1)/(r+1)} r^k sqrt(18eπ)^{k+1}.
double tilde_derivative_bound(std::size_t d, std::size_t r, double p, std::size_t k);

/// Membership of f_r in the tilde class with δ = delta_for_p(d, r, p).
std::vector<CheckOutcome> check_tilde_membership(const PointSet& nodes, std::size_t r, double p,
                                                 const VerifyBudget& budget, std::uint64_t seed);

/// All convolution properties (i)-(v) for f_r built on `nodes`.
std::vector<CheckOutcome> check_convolution_suite(const PointSet& nodes, std::size_t r,
                                                  double delta, const VerifyBudget& budget,
                                                  std::uint64_t seed);

}  // namespace cubadv
