#include "cubadv/fooling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "convolution.hpp"
#include "cubadv/errors.hpp"

namespace cubadv {
namespace {

void require_delta(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw InputError("delta must lie in (0, 1], got " + std::to_string(delta));
  }
}

// Closed form of min{1, dist(x, P_δ)/ρ} for a union of closed balls of radius ρ.
double clamp_excess(double dist, double radius) {
  const double excess = dist - radius;
  if (excess <= 0.0) return 0.0;
  return std::min(1.0, excess / radius);
}

double min_distance(std::span<const double> x, const PointSet& nodes) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    best = std::min(best, squared_distance(x, nodes[i]));
  }
  return std::sqrt(best);
}

void require_stencil(std::span<const std::vector<double>> points,
                     std::span<const double> weights, std::size_t dim) {
  if (points.empty()) throw InputError("stencil needs at least one point");
  if (points.size() != weights.size()) throw InputError("stencil weights/points mismatch");
  for (const auto& p : points) {
    if (p.size() != dim) throw InputError("stencil point dimension mismatch");
  }
}

}  // namespace

SmoothingSchedule::SmoothingSchedule(double delta, std::vector<double> alphas)
    : delta_(delta), alphas_(std::move(alphas)) {
  require_delta(delta_);
  double total = 0.0;
  for (double a : alphas_) {
    if (!(a > 0.0) || !std::isfinite(a)) throw InputError("every alpha must be > 0");
    total += a;
  }
  // Σ 1/r rounds to 1 ± a few ulps.
  if (total > 1.0 + 1e-12) throw InputError("alphas must sum to at most 1");
}

SmoothingSchedule SmoothingSchedule::uniform(double delta, std::size_t order) {
  return SmoothingSchedule(delta,
                           std::vector<double>(order, order ? 1.0 / static_cast<double>(order) : 0.0));
}

std::vector<double> SmoothingSchedule::radii(std::size_t dim) const {
  const double scale = delta_ * std::sqrt(static_cast<double>(dim));
  std::vector<double> out;
  out.reserve(alphas_.size());
  for (double a : alphas_) out.push_back(a * scale);
  return out;
}

double SmoothingSchedule::derivative_gain(std::size_t k) const {
  if (k > alphas_.size()) throw InputError("derivative order exceeds smoothing order");
  std::vector<double> sorted(alphas_.begin(), alphas_.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double gain = 1.0;
  for (std::size_t i = 0; i < k; ++i) gain /= delta_ * sorted[i];
  return gain;
}

double f0_eval(std::span<const double> x, const PointSet& nodes, double delta) {
  require_delta(delta);
  const double radius = delta * std::sqrt(static_cast<double>(nodes.dim()));
  return clamp_excess(dist_to_set(x, nodes), radius);
}

FoolingFunction::FoolingFunction(PointSet nodes, SmoothingSchedule schedule,
                                 std::size_t samples_per_eval, std::uint64_t master_seed)
    : nodes_(std::move(nodes)),
      schedule_(std::move(schedule)),
      samples_(samples_per_eval),
      seed_(master_seed),
      node_radius_(schedule_.delta() * std::sqrt(static_cast<double>(nodes_.dim()))),
      radii_(schedule_.radii(nodes_.dim())) {
  if (samples_ == 0) throw InputError("samples_per_eval must be >= 1");
}

double FoolingFunction::base(std::span<const double> x) const {
  if (x.size() != dim()) throw InputError("dimension mismatch");
  return clamp_excess(min_distance(x, nodes_), node_radius_);
}

EvalResult FoolingFunction::evaluate(std::span<const double> x, FastPaths fast) const {
  if (x.size() != dim()) throw InputError("dimension mismatch");
  if (fast == FastPaths::kEnabled) {
    const double dist = min_distance(x, nodes_);
    if (dist == 0.0) return {0.0, 0.0, true};
    if (dist >= 3.0 * node_radius_) return {1.0, 0.0, true};
  }
  Rng rng(seed_, point_stream(x));
  const std::vector<double> point(x.begin(), x.end());
  const double weight = 1.0;
  auto f0 = [this](std::span<const double> p) {
    return clamp_excess(min_distance(p, nodes_), node_radius_);
  };
  EvalResult result = detail::sample_stencil(f0, radii_, std::span(&point, 1),
                                             std::span(&weight, 1), samples_, rng);
  result.value = std::clamp(result.value, 0.0, 1.0);
  return result;
}

std::pair<EvalResult, EvalResult> FoolingFunction::evaluate_pair_crn(std::span<const double> x,
                                                                     std::span<const double> y,
                                                                     std::uint64_t stream) const {
  if (x.size() != dim() || y.size() != dim()) throw InputError("dimension mismatch");
  auto f0 = [this](std::span<const double> p) {
    return clamp_excess(min_distance(p, nodes_), node_radius_);
  };
  const std::vector<double> px(x.begin(), x.end());
  const std::vector<double> py(y.begin(), y.end());
  const double weight = 1.0;
  Rng rx(seed_, stream);
  Rng ry(seed_, stream);
  EvalResult ex = detail::sample_stencil(f0, radii_, std::span(&px, 1), std::span(&weight, 1),
                                         samples_, rx);
  EvalResult ey = detail::sample_stencil(f0, radii_, std::span(&py, 1), std::span(&weight, 1),
                                         samples_, ry);
  ex.value = std::clamp(ex.value, 0.0, 1.0);
  ey.value = std::clamp(ey.value, 0.0, 1.0);
  return {ex, ey};
}

EvalResult FoolingFunction::estimate_stencil(std::span<const std::vector<double>> points,
                                             std::span<const double> weights,
                                             std::size_t samples, std::uint64_t stream) const {
  require_stencil(points, weights, dim());
  if (samples == 0) throw InputError("samples must be >= 1");
  auto f0 = [this](std::span<const double> p) {
    return clamp_excess(min_distance(p, nodes_), node_radius_);
  };
  Rng rng(seed_, stream);
  return detail::sample_stencil(f0, radii_, points, weights, samples, rng);
}

ScalarField FoolingFunction::base_field() const {
  return [nodes = nodes_, radius = node_radius_](std::span<const double> p) {
    return clamp_excess(min_distance(p, nodes), radius);
  };
}

EvalResult conv_eval_generic(const ScalarField& base, const SmoothingSchedule& schedule,
                             std::span<const double> x, std::size_t samples, std::uint64_t seed) {
  if (x.empty()) throw InputError("dimension must be positive");
  if (samples == 0) throw InputError("samples must be >= 1");
  const std::vector<double> point(x.begin(), x.end());
  const double weight = 1.0;
  Rng rng(seed, point_stream(x));
  return detail::sample_stencil(base, schedule.radii(x.size()), std::span(&point, 1),
                                std::span(&weight, 1), samples, rng);
}

EvalResult stencil_eval_generic(const ScalarField& base, const SmoothingSchedule& schedule,
                                std::span<const std::vector<double>> points,
                                std::span<const double> weights, std::size_t samples,
                                std::uint64_t seed, std::uint64_t stream) {
  if (points.empty()) throw InputError("stencil needs at least one point");
  require_stencil(points, weights, points.front().size());
  if (samples == 0) throw InputError("samples must be >= 1");
  Rng rng(seed, stream);
  return detail::sample_stencil(base, schedule.radii(points.front().size()), points, weights,
                                samples, rng);
}

}  // namespace cubadv
