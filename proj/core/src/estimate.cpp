#include "cubadv/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cubadv/bounds.hpp"
#include "cubadv/errors.hpp"
#include "cubadv/parallel.hpp"
#include "cubadv/rng.hpp"
#include "cubadv/stats.hpp"

namespace cubadv {
namespace {

// Seed tags separating the sample streams of one attack run.
constexpr std::uint64_t kMeasureTag = 0x4d45415355ULL;
constexpr std::uint64_t kIntegralTag = 0x494e544752ULL;
constexpr std::uint64_t kInnerTag = 0x494e4e4552ULL;

void require_samples(const McConfig& config) {
  if (config.samples < 2) throw InputError("Monte Carlo needs at least 2 samples");
}

void fill_uniform(Rng& rng, std::span<double> x) {
  for (double& v : x) v = rng.uniform();
}

MCEstimate finish(const RunningStats& stats, const McConfig& config) {
  return {stats.mean(), stats.std_error(), stats.count(), config.seed};
}

// Runs `sample(rng, stats)` for every sample of every batch and merges the
// per-batch accumulators in batch order.
template <class Sampler>
std::vector<RunningStats> run_sampled(const McConfig& config, std::size_t dim, Sampler sample) {
  const std::size_t batches = batch_count(config.samples, kBatchSize);
  std::vector<RunningStats> per_batch(batches);
  run_batches(batches, config.threads, [&](std::size_t b) {
    Rng rng(config.seed, b);
    std::vector<double> x(dim);
    const std::size_t count = std::min(kBatchSize, config.samples - b * kBatchSize);
    RunningStats& stats = per_batch[b];
    for (std::size_t s = 0; s < count; ++s) {
      fill_uniform(rng, x);
      sample(x, stats);
    }
  });
  return per_batch;
}

}  // namespace

MCEstimate integral_unit_cube(const ScalarField& f, std::size_t d, const McConfig& config) {
  require_samples(config);
  if (d == 0) throw InputError("dimension must be positive");
  RunningStats total;
  for (const auto& stats : run_sampled(config, d, [&](std::span<const double> x, RunningStats& s) {
         s.add(f(x));
       })) {
    total.merge(stats);
  }
  return finish(total, config);
}

MCEstimate neighborhood_measure(const PointSet& points, double rho, const McConfig& config) {
  require_samples(config);
  if (!(rho >= 0.0)) throw InputError("neighborhood radius must be >= 0");
  RunningStats total;
  for (const auto& stats :
       run_sampled(config, points.dim(), [&](std::span<const double> x, RunningStats& s) {
         s.add(dist_to_set(x, points) <= rho ? 1.0 : 0.0);
       })) {
    total.merge(stats);
  }
  return finish(total, config);
}

MCEstimate integral_fooling(const FoolingFunction& f, const McConfig& config) {
  require_samples(config);
  const std::size_t batches = batch_count(config.samples, kBatchSize);
  struct Partial {
    RunningStats values;
    RunningStats inner_variance;
  };
  std::vector<Partial> per_batch(batches);
  const double shell = 3.0 * f.node_radius();

  run_batches(batches, config.threads, [&](std::size_t b) {
    Rng rng(config.seed, b);
    std::vector<double> x(f.dim());
    const std::size_t count = std::min(kBatchSize, config.samples - b * kBatchSize);
    Partial& part = per_batch[b];
    for (std::size_t s = 0; s < count; ++s) {
      fill_uniform(rng, x);
      if (dist_to_set(x, f.nodes()) >= shell) {
        part.values.add(1.0);
        part.inner_variance.add(0.0);
        continue;
      }
      const EvalResult r = f.evaluate(x);
      part.values.add(r.value);
      part.inner_variance.add(r.std_error * r.std_error);
    }
  });

  RunningStats values;
  RunningStats inner;
  for (const auto& part : per_batch) {
    values.merge(part.values);
    inner.merge(part.inner_variance);
  }
  const double m = static_cast<double>(values.count());
  const double variance = values.variance() / m + inner.mean() / m;
  return {values.mean(), std::sqrt(variance), values.count(), config.seed};
}

AttackReport attack(const PointSet& points, const AttackConfig& config) {
  const std::size_t d = points.dim();
  if (d < 2) throw UnsupportedError("attack requires d >= 2");
  if (config.order == 0) throw InputError("smoothing order r must be >= 1");

  AttackReport report;
  report.n = points.size();
  report.d = d;
  report.delta = config.delta;
  report.order = config.order;
  report.certificate_analytic = fooling_certificate(points.size(), d, config.delta);

  const FoolingFunction fooling(points, SmoothingSchedule::uniform(config.delta, config.order),
                                config.inner_samples, combine_seeds(config.seed, kInnerTag));
  const double rho = 3.0 * fooling.node_radius();

  const double union_mass = static_cast<double>(points.size()) * ball_volume(d, rho);
  report.certificate_union_bound = std::max(0.0, 1.0 - union_mass);

  report.measure_estimate = neighborhood_measure(
      points, rho,
      {config.measure_samples, combine_seeds(config.seed, kMeasureTag), config.threads});
  report.measure_estimate.seed = config.seed;
  report.certificate_mc = 1.0 - report.measure_estimate.mean;
  report.certificate_mc_radius = 3.0 * report.measure_estimate.std_error;

  report.integral_estimate = integral_fooling(
      fooling, {config.integral_samples, combine_seeds(config.seed, kIntegralTag), config.threads});
  report.integral_estimate.seed = config.seed;

  std::vector<double> audit(points.size(), 0.0);
  const std::size_t node_batches = batch_count(points.size(), 64);
  run_batches(node_batches, config.threads, [&](std::size_t b) {
    const std::size_t end = std::min(points.size(), (b + 1) * 64);
    for (std::size_t i = b * 64; i < end; ++i) {
      audit[i] = std::abs(fooling.evaluate(points[i], FastPaths::kDisabled).value);
    }
  });
  report.node_audit = *std::max_element(audit.begin(), audit.end());
  return report;
}

}  // namespace cubadv
