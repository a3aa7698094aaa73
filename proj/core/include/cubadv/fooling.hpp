#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "cubadv/geometry.hpp"

namespace cubadv {

/// Ball radii for the smoothing convolutions: the j-th kernel is the
/// normalized indicator of the ball of radius α_j δ sqrt(d).
class SmoothingSchedule {
 public:
  /// Requires 0 < δ ≤ 1, every α_j > 0 and Σ α_j ≤ 1. An empty α list is
  /// the unsmoothed base function.
  SmoothingSchedule(double delta, std::vector<double> alphas);

  /// α_j = 1/r for j = 1..r.
  static SmoothingSchedule uniform(double delta, std::size_t order);

  double delta() const noexcept { return delta_; }
  std::size_t order() const noexcept { return alphas_.size(); }
  std::span<const double> alphas() const noexcept { return alphas_; }

  /// α_j δ sqrt(dim) for every j.
  std::vector<double> radii(std::size_t dim) const;

  /// Π 1/(δ α_i) over the k largest α's: the factor by which k extra
  /// directional derivatives can grow a Lipschitz constant.
  double derivative_gain(std::size_t k) const;

 private:
  double delta_;
  std::vector<double> alphas_;
};

struct EvalResult {
  double value = 0.0;
  double std_error = 0.0;
  bool exact = false;
};

using ScalarField = std::function<double(std::span<const double>)>;

/// f_0(x) = min{1, dist(x, P_δ)/(δ sqrt d)} where P_δ is the union of closed
/// balls of radius δ sqrt d around the nodes; evaluated as
/// clamp(dist(x,P)/(δ sqrt d) - 1, 0, 1).
double f0_eval(std::span<const double> x, const PointSet& nodes, double delta);

enum class FastPaths { kEnabled, kDisabled };

/// The smoothed fooling function f_r = f_0 * g_1 * ... * g_r for a node set.
/// Immutable; evaluation is thread-safe.
class FoolingFunction {
 public:
  static constexpr std::size_t kDefaultSamples = 10000;

  FoolingFunction(PointSet nodes, SmoothingSchedule schedule,
                  std::size_t samples_per_eval = kDefaultSamples, std::uint64_t master_seed = 0);

  const PointSet& nodes() const noexcept { return nodes_; }
  const SmoothingSchedule& schedule() const noexcept { return schedule_; }
  std::size_t dim() const noexcept { return nodes_.dim(); }
  std::size_t samples_per_eval() const noexcept { return samples_; }
  std::uint64_t master_seed() const noexcept { return seed_; }

  /// δ sqrt d, the node-ball radius.
  double node_radius() const noexcept { return node_radius_; }

  /// Lip(f_0) = 1/(δ sqrt d).
  double lipschitz_bound() const noexcept { return 1.0 / node_radius_; }

  double base(std::span<const double> x) const;

  /// f_r(x) = E f_0(x + Y_1 + ... + Y_r). With fast paths on, returns exact 0
  /// at nodes and exact 1 when dist(x,P) ≥ 3δ sqrt d; otherwise a Monte Carlo
  /// mean over samples_per_eval draws from the stream derived from x.
  EvalResult evaluate(std::span<const double> x, FastPaths fast = FastPaths::kEnabled) const;

  /// Both points evaluated with the same draws from `stream` (fast paths off).
  std::pair<EvalResult, EvalResult> evaluate_pair_crn(std::span<const double> x,
                                                      std::span<const double> y,
                                                      std::uint64_t stream) const;

  /// E[Σ_k w_k f_0(p_k + Y)] with one shared Y per draw. The std_error is that
  /// of the combined estimator.
  EvalResult estimate_stencil(std::span<const std::vector<double>> points,
                              std::span<const double> weights, std::size_t samples,
                              std::uint64_t stream) const;

  /// f_0 as a type-erased field, for the generic convolution routines.
  ScalarField base_field() const;

 private:
  PointSet nodes_;
  SmoothingSchedule schedule_;
  std::size_t samples_;
  std::uint64_t seed_;
  double node_radius_;
  std::vector<double> radii_;
};

/// (base * g_1 * ... * g_r)(x) by sampling the summed ball offsets; draws come
/// from Rng(seed, point_stream(x)), the same stream policy FoolingFunction uses.
EvalResult conv_eval_generic(const ScalarField& base, const SmoothingSchedule& schedule,
                             std::span<const double> x, std::size_t samples, std::uint64_t seed);

/// Generic counterpart of FoolingFunction::estimate_stencil; draws from Rng(seed, stream).
EvalResult stencil_eval_generic(const ScalarField& base, const SmoothingSchedule& schedule,
                                std::span<const std::vector<double>> points,
                                std::span<const double> weights, std::size_t samples,
                                std::uint64_t seed, std::uint64_t stream);

}  // namespace cubadv
