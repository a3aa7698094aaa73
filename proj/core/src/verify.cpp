#include "cubadv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cubadv/bounds.hpp"
#include "cubadv/errors.hpp"
#include "cubadv/estimate.hpp"
#include "cubadv/parallel.hpp"

namespace cubadv {
namespace {

constexpr std::uint64_t kVanishTag = 0x56414e49ULL;
constexpr std::uint64_t kPairTag = 0x50414952ULL;
constexpr std::uint64_t kStencilTag = 0x5354454eULL;
constexpr std::uint64_t kRangeTag = 0x52414e47ULL;
constexpr std::size_t kTrialBatch = 32;

// Relative slack for checks whose bound holds per sample in exact arithmetic.
constexpr double kRoundoffTolerance = 1e-9;

CheckOutcome make_outcome(Property property, std::string condition, double observed, double bound,
                          double tolerance, std::size_t trials, std::uint64_t seed) {
  CheckOutcome out;
  out.property = property;
  out.condition = std::move(condition);
  out.observed = observed;
  out.bound = bound;
  out.tolerance = tolerance;
  out.trials = trials;
  out.seed = seed;
  out.passed = observed <= bound * (1.0 + tolerance);
  return out;
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

// Evaluates body(t) for t in [0, trials) in fixed batches.
template <class Body>
void for_each_trial(std::size_t trials, unsigned threads, Body body) {
  run_batches(batch_count(trials, kTrialBatch), threads, [&](std::size_t b) {
    const std::size_t end = std::min(trials, (b + 1) * kTrialBatch);
    for (std::size_t t = b * kTrialBatch; t < end; ++t) body(t);
  });
}

double smoothing_radius(const VerifyTarget& target) {
  return target.schedule.delta() * std::sqrt(static_cast<double>(target.dim));
}

}  // namespace

std::string_view property_name(Property p) {
  switch (p) {
    case Property::kConvI: return "conv_i";
    case Property::kConvII: return "conv_ii";
    case Property::kConvIII: return "conv_iii";
    case Property::kConvIV: return "conv_iv";
    case Property::kConvV: return "conv_v";
    case Property::kClassNorm: return "class_norm";
    case Property::kClassLip: return "class_lip";
    case Property::kClassDLip: return "class_dlip";
    case Property::kTildeClass: return "tilde_class";
  }
  return "unknown";
}

bool failed(const CheckOutcome& outcome) { return !outcome.passed && !outcome.inconclusive; }

EvalResult VerifyTarget::estimate(std::span<const std::vector<double>> points,
                                  std::span<const double> weights, std::size_t samples,
                                  std::uint64_t stream) const {
  if (stencil) return stencil(points, weights, samples, stream);
  return stencil_eval_generic(base, schedule, points, weights, samples, seed, stream);
}

VerifyTarget make_target(const FoolingFunction& f) {
  const double reach = 3.0 * f.node_radius();
  return VerifyTarget{
      .base = f.base_field(),
      .schedule = f.schedule(),
      .dim = f.dim(),
      .seed = f.master_seed(),
      .sample_point =
          [&f, reach](Rng& rng, std::span<double> x) {
            const auto& nodes = f.nodes();
            const auto i = std::min<std::size_t>(
                nodes.size() - 1,
                static_cast<std::size_t>(rng.uniform() * static_cast<double>(nodes.size())));
            sample_ball(reach, rng, x);
            const auto node = nodes[i];
            for (std::size_t j = 0; j < x.size(); ++j) x[j] += node[j];
          },
      .stencil =
          [&f](std::span<const std::vector<double>> points, std::span<const double> weights,
               std::size_t samples, std::uint64_t stream) {
            return f.estimate_stencil(points, weights, samples, stream);
          },
  };
}

VerifyTarget make_target(ScalarField base, SmoothingSchedule schedule, std::vector<double> lower,
                         std::vector<double> upper, std::uint64_t seed) {
  if (lower.empty() || lower.size() != upper.size()) throw InputError("bad sampling box");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) throw InputError("sampling box has lower > upper");
  }
  const std::size_t dim = lower.size();
  return VerifyTarget{
      .base = std::move(base),
      .schedule = std::move(schedule),
      .dim = dim,
      .seed = seed,
      .sample_point =
          [lower = std::move(lower), upper = std::move(upper)](Rng& rng, std::span<double> x) {
            for (std::size_t j = 0; j < x.size(); ++j) x[j] = rng.uniform(lower[j], upper[j]);
          },
      .stencil = {},
  };
}

VerifyBudget VerifyBudget::scaled(double factor) const {
  if (!(factor > 0.0)) throw InputError("budget factor must be > 0");
  auto scale = [factor](std::size_t v) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(v * factor)));
  };
  VerifyBudget out = *this;
  out.range_points = scale(range_points);
  out.lip_pairs = scale(lip_pairs);
  out.pair_samples = scale(pair_samples);
  out.directions = scale(directions);
  out.derivative_samples = std::max<std::size_t>(2, scale(derivative_samples));
  out.integral_samples = std::max<std::size_t>(2, scale(integral_samples));
  out.inner_samples = scale(inner_samples);
  return out;
}

CheckOutcome check_vanishing(const FoolingFunction& f, std::size_t trials) {
  const std::size_t n = f.nodes().size();
  const std::size_t total = std::max(n, trials);
  double observed = 0.0;
  for (std::size_t t = 0; t < total; ++t) {
    const auto node = f.nodes()[t % n];
    double value = 0.0;
    if (t < n) {
      value = f.evaluate(node, FastPaths::kDisabled).value;
    } else {
      const std::vector<double> p(node.begin(), node.end());
      const double w = 1.0;
      value = f.estimate_stencil(std::span(&p, 1), std::span(&w, 1), f.samples_per_eval(),
                                 combine_seeds(kVanishTag, t))
                  .value;
    }
    observed = std::max(observed, std::abs(value));
  }
  return make_outcome(Property::kConvI, "nodes", observed, 0.0, 0.0, total, f.master_seed());
}

CheckOutcome check_vanishing(const VerifyTarget& target,
                             std::span<const std::vector<double>> omega, std::size_t samples) {
  double observed = 0.0;
  const double w = 1.0;
  for (std::size_t t = 0; t < omega.size(); ++t) {
    const EvalResult r =
        target.estimate(omega.subspan(t, 1), std::span(&w, 1), samples, combine_seeds(kVanishTag, t));
    observed = std::max(observed, std::abs(r.value));
  }
  return make_outcome(Property::kConvI, "omega", observed, 0.0, 0.0, omega.size(), target.seed);
}

CheckOutcome check_lip(const VerifyTarget& target, double lip_bound, std::size_t pairs,
                       std::size_t samples_per_pair, std::uint64_t seed, unsigned threads,
                       Property property) {
  if (pairs == 0) throw InputError("check_lip needs at least one pair");
  const double reach = smoothing_radius(target);
  std::vector<double> ratios(pairs, 0.0);
  const double weights[2] = {1.0, -1.0};

  for_each_trial(pairs, threads, [&](std::size_t t) {
    Rng rng(seed, combine_seeds(kPairTag, t));
    std::vector<std::vector<double>> pts(2, std::vector<double>(target.dim));
    target.sample_point(rng, pts[0]);
    std::vector<double> u(target.dim);
    sample_unit_sphere(rng, u);
    const double step = reach * (1.0 - rng.uniform());  // (0, reach]
    for (std::size_t j = 0; j < target.dim; ++j) pts[1][j] = pts[0][j] + step * u[j];

    std::vector<double> diff(target.dim);
    for (std::size_t j = 0; j < target.dim; ++j) diff[j] = pts[0][j] - pts[1][j];
    const double sep = norm(diff);
    if (sep == 0.0) return;
    const EvalResult r =
        target.estimate(pts, weights, samples_per_pair, combine_seeds(seed, kPairTag + t));
    ratios[t] = std::abs(r.value) / sep;
  });

  const double observed = *std::max_element(ratios.begin(), ratios.end());
  return make_outcome(property, "pairs", observed, lip_bound, 0.0, pairs, seed);
}

CheckOutcome check_lip(const FoolingFunction& f, std::size_t pairs, std::uint64_t seed,
                       std::size_t samples_per_pair, unsigned threads) {
  return check_lip(make_target(f), f.lipschitz_bound(), pairs, samples_per_pair, seed, threads);
}

CheckOutcome check_integral_floor(double eps, double estimate, double std_error,
                                  std::size_t samples, std::uint64_t seed, std::string condition) {
  return make_outcome(Property::kConvIII, std::move(condition), eps - estimate, 3.0 * std_error,
                      0.0, samples, seed);
}

DifferenceRatio difference_quotient_ratio(const VerifyTarget& target,
                                          std::span<const double> x, std::span<const double> y,
                                          std::span<const std::vector<double>> directions,
                                          double h, std::size_t samples, std::uint64_t stream) {
  const std::size_t k = directions.size();
  if (k == 0 || k > 16) throw InputError("difference order must lie in 1..16");
  if (!(h > 0.0)) throw InputError("finite-difference step must be > 0");
  if (x.size() != target.dim || y.size() != target.dim) throw InputError("dimension mismatch");

  std::vector<double> diff(target.dim);
  for (std::size_t j = 0; j < target.dim; ++j) diff[j] = x[j] - y[j];
  const double sep = norm(diff);
  if (sep == 0.0) return {};

  const std::size_t corners = std::size_t{1} << k;
  const double scale = 1.0 / (std::pow(2.0 * h, static_cast<double>(k)) * sep);
  std::vector<std::vector<double>> points;
  std::vector<double> weights;
  points.reserve(2 * corners);
  weights.reserve(2 * corners);
  for (int side = 0; side < 2; ++side) {
    const auto base = side == 0 ? x : y;
    for (std::size_t mask = 0; mask < corners; ++mask) {
      std::vector<double> p(base.begin(), base.end());
      double sign = 1.0;
      for (std::size_t i = 0; i < k; ++i) {
        const double s = (mask >> i) & 1u ? -1.0 : 1.0;
        sign *= s;
        for (std::size_t j = 0; j < target.dim; ++j) p[j] += s * h * directions[i][j];
      }
      points.push_back(std::move(p));
      weights.push_back((side == 0 ? sign : -sign) * scale);
    }
  }
  const EvalResult r = target.estimate(points, weights, samples, stream);
  return {std::abs(r.value), r.std_error};
}

CheckOutcome check_difference_lip(const VerifyTarget& target, const DerivativeCheckConfig& config,
                                  Property property, std::string condition) {
  if (config.order == 0) throw InputError("derivative order must be >= 1");
  if (config.trials == 0) throw InputError("derivative check needs at least one trial");
  if (!(config.h > 0.0)) throw InputError("finite-difference step must be > 0");

  std::vector<DifferenceRatio> results(config.trials);
  for_each_trial(config.trials, config.threads, [&](std::size_t t) {
    Rng rng(config.seed, combine_seeds(kStencilTag, t));
    std::vector<double> x(target.dim), y(target.dim), u(target.dim);
    target.sample_point(rng, x);
    std::vector<std::vector<double>> dirs(config.order, std::vector<double>(target.dim));
    for (auto& d : dirs) sample_unit_sphere(rng, d);
    sample_unit_sphere(rng, u);
    for (std::size_t j = 0; j < target.dim; ++j) y[j] = x[j] + config.h * u[j];
    results[t] = difference_quotient_ratio(target, x, y, dirs, config.h, config.samples,
                                           combine_seeds(config.seed, kStencilTag + t));
  });

  std::size_t arg = 0;
  double max_se = 0.0;
  for (std::size_t t = 0; t < results.size(); ++t) {
    if (results[t].value > results[arg].value) arg = t;
    max_se = std::max(max_se, results[t].std_error);
  }
  CheckOutcome out = make_outcome(property, std::move(condition), results[arg].value, config.bound,
                                  config.tolerance, config.trials, config.seed);
  out.observed_std_error = results[arg].std_error;
  out.inconclusive = 3.0 * max_se > config.tolerance * config.bound;
  return out;
}

CheckOutcome check_derivative_lip(const FoolingFunction& f, std::size_t k, std::size_t directions,
                                  double h, std::uint64_t seed, std::size_t samples,
                                  unsigned threads) {
  if (k == 0 || k > f.schedule().order()) {
    throw InputError("derivative order k must satisfy 1 <= k <= r");
  }
  const double delta = f.schedule().delta();
  const double rel_step = h / delta;
  DerivativeCheckConfig config{
      .order = k,
      .trials = directions,
      .h = h,
      .samples = samples,
      .seed = seed,
      .bound = f.lipschitz_bound() * f.schedule().derivative_gain(k),
      .tolerance = 0.1 + rel_step * rel_step,
      .threads = threads,
  };
  return check_difference_lip(make_target(f), config, Property::kConvV,
                              "k=" + std::to_string(k));
}

CheckOutcome check_range(const FoolingFunction& f, std::size_t points, std::uint64_t seed,
                         Property property) {
  const VerifyTarget target = make_target(f);
  double observed = 0.0;
  std::vector<double> x(f.dim());
  for (std::size_t t = 0; t < points; ++t) {
    Rng rng(seed, combine_seeds(kRangeTag, t));
    target.sample_point(rng, x);
    observed = std::max(observed, std::abs(f.evaluate(x).value));
  }
  return make_outcome(property, "norm", observed, 1.0, 0.0, points, seed);
}

namespace {

void require_uniform_alphas(const SmoothingSchedule& schedule) {
  const double expected = 1.0 / static_cast<double>(schedule.order());
  for (double a : schedule.alphas()) {
    if (std::abs(a - expected) > 1e-15) {
      throw InputError("class membership requires alpha_j = 1/r for all j");
    }
  }
}

std::vector<CheckOutcome> membership_checks(const FoolingFunction& f, const VerifyBudget& budget,
                                            std::uint64_t seed, Property norm_id,
                                            Property lip_id, Property dlip_id, double lip_bound,
                                            const std::function<double(std::size_t)>& dlip_bound,
                                            const std::string& prefix) {
  const double delta = f.schedule().delta();
  const double h = budget.step_fraction * delta;
  const VerifyTarget target = make_target(f);

  std::vector<CheckOutcome> out;
  CheckOutcome range = check_range(f, budget.range_points, combine_seeds(seed, 1), norm_id);
  range.condition = prefix + "norm";
  out.push_back(range);

  CheckOutcome lip = check_lip(target, lip_bound, budget.lip_pairs, budget.pair_samples,
                               combine_seeds(seed, 2), budget.threads, lip_id);
  lip.condition = prefix + "lip";
  out.push_back(lip);

  for (std::size_t k = 1; k <= f.schedule().order(); ++k) {
    DerivativeCheckConfig config{
        .order = k,
        .trials = budget.directions,
        .h = h,
        .samples = budget.derivative_samples,
        .seed = combine_seeds(seed, 2 + k),
        .bound = dlip_bound(k),
        .tolerance = 0.1 + budget.step_fraction * budget.step_fraction,
        .threads = budget.threads,
    };
    out.push_back(check_difference_lip(target, config, dlip_id, prefix + "k=" + std::to_string(k)));
  }
  return out;
}

}  // namespace

std::vector<CheckOutcome> check_class_membership(const FoolingFunction& f,
                                                 const VerifyBudget& budget, std::uint64_t seed) {
  require_uniform_alphas(f.schedule());
  const double lip = f.lipschitz_bound();
  const double r_over_delta = static_cast<double>(f.schedule().order()) / f.schedule().delta();
  return membership_checks(
      f, budget, seed, Property::kClassNorm, Property::kClassLip, Property::kClassDLip, lip,
      [&](std::size_t k) { return lip * std::pow(r_over_delta, static_cast<double>(k)); }, "");
}

double tilde_lip_bound(std::size_t d, std::size_t r, double p) {
  const double dd = static_cast<double>(d);
  return std::exp((-0.5 + p / static_cast<double>(r + 1)) * std::log(dd) +
                  0.5 * log_eighteen_e_pi());
}

double tilde_derivative_bound(std::size_t d, std::size_t r, double p, std::size_t k) {
  const double dd = static_cast<double>(d);
  const double kk = static_cast<double>(k);
  return std::exp((-0.5 + p * (kk + 1.0) / static_cast<double>(r + 1)) * std::log(dd) +
                  kk * std::log(static_cast<double>(r)) + 0.5 * (kk + 1.0) * log_eighteen_e_pi());
}

std::vector<CheckOutcome> check_tilde_membership(const PointSet& nodes, std::size_t r, double p,
                                                 const VerifyBudget& budget, std::uint64_t seed) {
  if (r == 0) throw InputError("smoothing order r must be >= 1");
  const std::size_t d = nodes.dim();
  const double delta = delta_for_p(d, r, p);
  const FoolingFunction f(nodes, SmoothingSchedule::uniform(delta, r), budget.inner_samples, seed);
  return membership_checks(
      f, budget, seed, Property::kTildeClass, Property::kTildeClass, Property::kTildeClass,
      tilde_lip_bound(d, r, p), [&](std::size_t k) { return tilde_derivative_bound(d, r, p, k); },
      "tilde ");
}

std::vector<CheckOutcome> check_convolution_suite(const PointSet& nodes, std::size_t r,
                                                  double delta, const VerifyBudget& budget,
                                                  std::uint64_t seed) {
  const std::size_t d = nodes.dim();
  if (d < 2) throw UnsupportedError("the convolution suite requires d >= 2");
  if (r == 0) throw InputError("smoothing order r must be >= 1");
  const SmoothingSchedule schedule = SmoothingSchedule::uniform(delta, r);
  const FoolingFunction f(nodes, schedule, budget.inner_samples, seed);
  std::vector<CheckOutcome> out;

  out.push_back(check_vanishing(f, std::max<std::size_t>(nodes.size(), 64)));

  CheckOutcome lip = check_lip(make_target(f), f.lipschitz_bound(), budget.lip_pairs,
                               budget.pair_samples, combine_seeds(seed, 11), budget.threads);
  out.push_back(lip);

  // f_0 = 1 off the 2δ-neighborhood, so every shift of it integrates to at
  // least 1 - n λ(ball of radius 2δ sqrt d) over the cube.
  {
    const double floor_eps = 1.0 - static_cast<double>(nodes.size()) *
                                       ball_volume(d, 2.0 * f.node_radius());
    const McConfig mc{budget.integral_samples, combine_seeds(seed, 12), budget.threads};
    const MCEstimate est = integral_fooling(f, mc);
    out.push_back(check_integral_floor(floor_eps, est.mean, est.std_error, est.samples, mc.seed,
                                       "nodes"));
  }
  {
    constexpr double kConstant = 0.3;
    const ScalarField constant = [](std::span<const double>) { return kConstant; };
    const McConfig mc{std::max<std::size_t>(2, budget.integral_samples / 16),
                      combine_seeds(seed, 13), budget.threads};
    const MCEstimate est = integral_unit_cube(
        [&](std::span<const double> x) {
          return conv_eval_generic(constant, schedule, x, 16, mc.seed).value;
        },
        d, mc);
    out.push_back(check_integral_floor(kConstant, est.mean, est.std_error, est.samples, mc.seed,
                                       "constant"));
  }

  // Smooth base 0.5 sin(w.x) with |w| = 3: Lip(D^θ_1..D^θ_l f) <= 0.5 |w|^{l+1}.
  {
    const double wi = 3.0 / std::sqrt(static_cast<double>(d));
    const ScalarField wave = [wi](std::span<const double> x) {
      double s = 0.0;
      for (double c : x) s += wi * c;
      return 0.5 * std::sin(s);
    };
    const VerifyTarget smooth = make_target(wave, schedule, std::vector<double>(d, 0.0),
                                            std::vector<double>(d, 1.0), seed);
    for (std::size_t l = 1; l <= r; ++l) {
      DerivativeCheckConfig config{
          .order = l,
          .trials = budget.directions,
          .h = budget.step_fraction * delta,
          .samples = budget.pair_samples,
          .seed = combine_seeds(seed, 20 + l),
          .bound = 0.5 * std::pow(3.0, static_cast<double>(l + 1)),
          .tolerance = kRoundoffTolerance,
          .threads = budget.threads,
      };
      CheckOutcome o =
          check_difference_lip(smooth, config, Property::kConvIV, "l=" + std::to_string(l));
      // The bound holds for every draw, so noise cannot make it inconclusive.
      o.inconclusive = false;
      out.push_back(o);
    }
  }

  for (std::size_t k = 1; k <= r; ++k) {
    out.push_back(check_derivative_lip(f, k, budget.directions, budget.step_fraction * delta,
                                       combine_seeds(seed, 30 + k), budget.derivative_samples,
                                       budget.threads));
  }
  return out;
}

}  // namespace cubadv
