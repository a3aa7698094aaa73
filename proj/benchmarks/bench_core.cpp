#include <benchmark/benchmark.h>

#include <vector>

#include "cubadv/estimate.hpp"
#include "cubadv/fooling.hpp"
#include "cubadv/geometry.hpp"
#include "cubadv/rng.hpp"
#include "cubadv/rules.hpp"

using namespace cubadv;

static void BM_DistToSet(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PointSet p = uniform_random(8, n, 1);
  Rng rng(2, 0);
  std::vector<double> x(8);
  for (auto _ : state) {
    for (double& c : x) c = rng.uniform();
    benchmark::DoNotOptimize(dist_to_set(x, p));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_DistToSet)->RangeMultiplier(8)->Range(8, 32768);

static void BM_SampleBall(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng(3, 0);
  std::vector<double> y(d);
  for (auto _ : state) {
    sample_ball(0.5, rng, y);
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(BM_SampleBall)->Arg(2)->Arg(10)->Arg(100);

// One Monte Carlo evaluation of f_r near a node (fast paths do not apply).
static void BM_FrEval(benchmark::State& state) {
  const auto r = static_cast<std::size_t>(state.range(0));
  const PointSet nodes = midpoint_product(3, 4);
  const FoolingFunction f(nodes, SmoothingSchedule::uniform(0.05, r), 10'000, 1);
  std::vector<double> x(nodes[0].begin(), nodes[0].end());
  x[0] += 0.12;
  for (auto _ : state) benchmark::DoNotOptimize(f.evaluate(x).value);
}
BENCHMARK(BM_FrEval)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_NeighborhoodMeasure(benchmark::State& state) {
  const PointSet nodes = midpoint_product(2, 16);
  const McConfig cfg{static_cast<std::size_t>(state.range(0)), 5, 1};
  for (auto _ : state) benchmark::DoNotOptimize(neighborhood_measure(nodes, 0.01, cfg).mean);
}
BENCHMARK(BM_NeighborhoodMeasure)->Arg(100'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
