#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "cubadv/errors.hpp"
#include "cubadv/fooling.hpp"
#include "cubadv/rng.hpp"
#include "cubadv/rules.hpp"
#include "polar_grid.hpp"

namespace cubadv {
namespace {

TEST(SmoothingSchedule, Validation) {
  EXPECT_THROW(SmoothingSchedule(0.0, {1.0}), InputError);
  EXPECT_THROW(SmoothingSchedule(1.5, {1.0}), InputError);
  EXPECT_THROW(SmoothingSchedule(0.1, {0.6, 0.6}), InputError);
  EXPECT_THROW(SmoothingSchedule(0.1, {-0.1}), InputError);
  EXPECT_NO_THROW(SmoothingSchedule(0.1, {}));
  const auto s = SmoothingSchedule::uniform(0.1, 3);
  EXPECT_EQ(s.order(), 3u);
  for (double a : s.alphas()) EXPECT_DOUBLE_EQ(a, 1.0 / 3.0);
}

TEST(SmoothingSchedule, DerivativeGainUsesLargestAlphas) {
  const SmoothingSchedule s(0.2, {0.25, 0.5, 0.25});
  EXPECT_DOUBLE_EQ(s.derivative_gain(0), 1.0);
  EXPECT_DOUBLE_EQ(s.derivative_gain(1), 1.0 / (0.2 * 0.5));
  EXPECT_DOUBLE_EQ(s.derivative_gain(2), 1.0 / (0.2 * 0.5) / (0.2 * 0.25));
}

TEST(F0, Examples) {
  const PointSet origin = PointSet::from_rows({{0.0, 0.0, 0.0, 0.0}});
  const std::vector<double> at_node{0.0, 0.0, 0.0, 0.0};
  const std::vector<double> mid{0.3, 0.0, 0.0, 0.0};
  const std::vector<double> far{0.5, 0.0, 0.0, 0.0};
  EXPECT_EQ(f0_eval(at_node, origin, 0.1), 0.0);
  EXPECT_NEAR(f0_eval(mid, origin, 0.1), 0.5, 1e-15);
  EXPECT_EQ(f0_eval(far, origin, 0.1), 1.0);
  EXPECT_THROW(f0_eval(mid, origin, 0.0), InputError);
  EXPECT_THROW(f0_eval(mid, origin, 1.1), InputError);
}

// Literal form: min over nodes of the clamped distance to each closed ball.
TEST(F0, MatchesPerBallDefinition) {
  const PointSet nodes = uniform_random(3, 12, 4);
  const double delta = 0.08;
  const double radius = delta * std::sqrt(3.0);
  Rng rng(3, 3);
  for (int q = 0; q < 500; ++q) {
    std::vector<double> x{rng.uniform(), rng.uniform(), rng.uniform()};
    double dist_to_union = INFINITY;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j) s += (x[j] - nodes[i][j]) * (x[j] - nodes[i][j]);
      dist_to_union = std::min(dist_to_union, std::max(0.0, std::sqrt(s) - radius));
    }
    EXPECT_NEAR(f0_eval(x, nodes, delta), std::min(1.0, dist_to_union / radius), 1e-14);
  }
}

TEST(FrEval, NodeIsExactZeroOnBothPaths) {
  const PointSet nodes = uniform_random(3, 5, 1);
  const FoolingFunction f(nodes, SmoothingSchedule::uniform(0.05, 2), 2000, 9);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto fast = f.evaluate(nodes[i]);
    EXPECT_EQ(fast.value, 0.0);
    EXPECT_TRUE(fast.exact);
    const auto slow = f.evaluate(nodes[i], FastPaths::kDisabled);
    EXPECT_EQ(slow.value, 0.0);
    EXPECT_EQ(slow.std_error, 0.0);
    EXPECT_FALSE(slow.exact);
  }
}

TEST(FrEval, FarPointIsExactOne) {
  const PointSet nodes = PointSet::from_rows({{0.5, 0.5}});
  const double delta = 0.05;
  const FoolingFunction f(nodes, SmoothingSchedule::uniform(delta, 1), 2000, 9);
  const std::vector<double> x{0.5 + 4 * delta * std::sqrt(2.0), 0.5};
  const auto fast = f.evaluate(x);
  EXPECT_EQ(fast.value, 1.0);
  EXPECT_TRUE(fast.exact);
  // Every draw lands at distance ≥ 3δ sqrt d, where f_0 = 1.
  EXPECT_EQ(f.evaluate(x, FastPaths::kDisabled).value, 1.0);
}

TEST(FrEval, AgreesWithPolarGridOracle) {
  const double delta = 0.1;
  const PointSet nodes = PointSet::from_rows({{0.5, 0.5}});
  const FoolingFunction f(nodes, SmoothingSchedule::uniform(delta, 1), 400'000, 21);
  const std::vector<double> x{0.75, 0.5};
  const auto est = f.evaluate(x);
  ASSERT_FALSE(est.exact);
  const double radius = delta * std::sqrt(2.0);
  const double want = oracle::polar_disk_average(
      [&](double a, double b) {
        const double p[2] = {a, b};
        return f0_eval(p, nodes, delta);
      },
      x[0], x[1], radius);
  EXPECT_NEAR(est.value, want, 3.0 * est.std_error + 1e-6);
}

TEST(FrEval, DeterministicPerPoint) {
  const PointSet nodes = uniform_random(2, 3, 8);
  const FoolingFunction f(nodes, SmoothingSchedule::uniform(0.1, 2), 1000, 5);
  const std::vector<double> x{0.4, 0.6};
  const auto a = f.evaluate(x);
  const auto b = f.evaluate(x);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
  const FoolingFunction g(nodes, SmoothingSchedule::uniform(0.1, 2), 1000, 6);
  EXPECT_NE(g.evaluate(x).value, a.value);
}

TEST(FrEval, ValuesStayInUnitInterval) {
  const PointSet nodes = uniform_random(4, 10, 2);
  const FoolingFunction f(nodes, SmoothingSchedule::uniform(0.1, 3), 200, 1);
  Rng rng(4, 4);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> x(4);
    for (double& c : x) c = rng.uniform();
    const double v = f.evaluate(x).value;
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(PairCrn, IdenticalPointsGiveIdenticalValues) {
  const PointSet nodes = uniform_random(3, 4, 6);
  const FoolingFunction f(nodes, SmoothingSchedule::uniform(0.1, 1), 500, 2);
  const std::vector<double> x{0.3, 0.3, 0.3};
  const auto [a, b] = f.evaluate_pair_crn(x, x, 17);
  EXPECT_EQ(a.value, b.value);
}

// Sample-wise transfer of Lip(f_0) = 1/(δ sqrt d) through shared draws.
TEST(PairCrn, RatioNeverExceedsBaseLipschitzConstant) {
  const PointSet nodes = uniform_random(3, 6, 12);
  const FoolingFunction f(nodes, SmoothingSchedule::uniform(0.1, 1), 64, 3);
  Rng rng(12, 0);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> x(3), y(3);
    for (int j = 0; j < 3; ++j) {
      x[j] = rng.uniform();
      y[j] = x[j] + rng.uniform(-0.05, 0.05);
    }
    const auto [a, b] = f.evaluate_pair_crn(x, y, static_cast<std::uint64_t>(i));
    const double dist = std::sqrt(squared_distance(x, y));
    EXPECT_LE(std::abs(a.value - b.value) / dist, f.lipschitz_bound() * (1 + 1e-12));
  }
}

TEST(Generic, ConstantBaseIsPreserved) {
  const ScalarField c = [](std::span<const double>) { return 0.3; };
  const std::vector<double> x{0.1, 0.9, 0.5};
  const auto r = conv_eval_generic(c, SmoothingSchedule(0.2, {0.3, 0.5}), x, 1000, 4);
  EXPECT_EQ(r.value, 0.3);
  EXPECT_EQ(r.std_error, 0.0);
}

TEST(Generic, LinearBaseIsPreservedInMean) {
  const std::vector<double> v{1.0, -2.0, 0.5};
  const ScalarField lin = [&](std::span<const double> t) {
    return v[0] * t[0] + v[1] * t[1] + v[2] * t[2];
  };
  const std::vector<double> x{0.2, 0.4, 0.6};
  const auto r = conv_eval_generic(lin, SmoothingSchedule::uniform(0.5, 2), x, 50'000, 8);
  EXPECT_NEAR(r.value, 0.2 - 0.8 + 0.3, 3.0 * r.std_error);
}

TEST(Generic, MatchesFoolingEvaluationBitForBit) {
  const PointSet nodes = uniform_random(2, 5, 30);
  const FoolingFunction f(nodes, SmoothingSchedule::uniform(0.1, 2), 777, 44);
  const std::vector<double> x{0.55, 0.45};
  const auto a = f.evaluate(x, FastPaths::kDisabled);
  const auto b = conv_eval_generic(f.base_field(), f.schedule(), x, 777, 44);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(Stencil, SinglePointMatchesPairEvaluation) {
  const PointSet nodes = uniform_random(2, 5, 31);
  const FoolingFunction f(nodes, SmoothingSchedule::uniform(0.1, 1), 300, 1);
  const std::vector<std::vector<double>> pts{{0.3, 0.7}, {0.31, 0.69}};
  const std::vector<double> w{1.0, -1.0};
  const auto s = f.estimate_stencil(pts, w, 300, 99);
  const auto [a, b] = f.evaluate_pair_crn(pts[0], pts[1], 99);
  EXPECT_NEAR(s.value, a.value - b.value, 1e-12);
}

}  // namespace
}  // namespace cubadv
