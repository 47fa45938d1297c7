#include <benchmark/benchmark.h>

#include <cmath>

#include "brodylab/metric_space.hpp"
#include "brodylab/rng.hpp"
#include "brodylab/types.hpp"

using namespace brodylab;

namespace {

FiniteMetricSpace plane_space(std::size_t n) {
  Rng rng(3);
  std::vector<Complex> pts(n);
  for (auto& p : pts) p = Complex(rng.uniform(), rng.uniform());
  return FiniteMetricSpace::from_function(n, [&](std::size_t i, std::size_t j) { return std::abs(pts[i] - pts[j]); });
}

void BM_GreedySeparated(benchmark::State& state) {
  const auto s = plane_space(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_separated(s, 0.05).size());
}
BENCHMARK(BM_GreedySeparated)->Arg(100)->Arg(1000);

void BM_GreedyCover(benchmark::State& state) {
  const auto s = plane_space(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_cover(s, 0.05));
}
BENCHMARK(BM_GreedyCover)->Arg(100)->Arg(300);

void BM_PointCloudSeparated(benchmark::State& state) {
  const auto grid = sup_ball_grid(3, 2.0, 33);
  for (auto _ : state) benchmark::DoNotOptimize(point_cloud_separated_count(grid, 3, 0.25, Norm::sup));
}
BENCHMARK(BM_PointCloudSeparated)->Unit(benchmark::kMillisecond);

}  // namespace
