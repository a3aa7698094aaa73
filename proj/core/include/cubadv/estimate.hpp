#pragma once

#include <cstddef>
#include <cstdint>

#include "cubadv/fooling.hpp"
#include "cubadv/geometry.hpp"

namespace cubadv {

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample std / sqrt(samples)
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Sample count, seed and worker cap for a Monte Carlo run. Samples are drawn
/// in fixed batches seeded by (seed, batch index), so `threads` never changes
/// the result.
struct McConfig {
  std::size_t samples = 100'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

inline constexpr std::size_t kBatchSize = 1024;

/// Plain Monte Carlo over [0,1]^d. `f` must be safe to call concurrently.
MCEstimate integral_unit_cube(const ScalarField& f, std::size_t d, const McConfig& config);

/// λ_d({x : dist(x,P) ≤ ρ} ∩ [0,1]^d) as a hit fraction.
MCEstimate neighborhood_measure(const PointSet& points, double rho, const McConfig& config);

/// ∫_{[0,1]^d} f_r. Points at distance ≥ 3δ sqrt d from the nodes are exact 1
/// and skip the inner loop. The std_error adds the mean inner variance to the
/// outer variance.
MCEstimate integral_fooling(const FoolingFunction& f, const McConfig& config);

struct AttackConfig {
  std::size_t order = 1;  // r
  double delta = 0.05;
  std::size_t measure_samples = 100'000;
  std::size_t integral_samples = 100'000;
  std::size_t inner_samples = 1'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Certificate for one node set. `certificate_analytic` is proved;
/// `certificate_mc` is statistical with a 3σ radius.
struct AttackReport {
  std::size_t n = 0;
  std::size_t d = 0;
  double delta = 0.0;
  std::size_t order = 0;

  double certificate_analytic = 0.0;
  /// max(0, 1 - n λ_d(ball of radius 3δ sqrt d)), between the two certificates.
  double certificate_union_bound = 0.0;
  MCEstimate measure_estimate;
  double certificate_mc = 0.0;
  double certificate_mc_radius = 0.0;
  MCEstimate integral_estimate;
  /// max_i |f_r(x_i)| evaluated on the Monte Carlo path (fast paths off).
  double node_audit = 0.0;
};

/// Builds f_r against `points` (α_j = 1/r) and certifies it. Throws
/// UnsupportedError for d = 1.
AttackReport attack(const PointSet& points, const AttackConfig& config);

}  // namespace cubadv
