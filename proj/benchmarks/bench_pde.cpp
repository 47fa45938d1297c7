#include <benchmark/benchmark.h>

#include "brodylab/helmholtz.hpp"

using namespace brodylab;

namespace {

void BM_SolveHelmholtz(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  const auto psi = random_trig_field(PlaneLattice::square(16.0), n, n, 8, rng);
  for (auto _ : state) benchmark::DoNotOptimize(solve_helmholtz(psi).values().data());
}
BENCHMARK(BM_SolveHelmholtz)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMicrosecond);

}  // namespace
