#include <benchmark/benchmark.h>

#include "brodylab/lattice.hpp"
#include "brodylab/rho_search.hpp"
#include "brodylab/spherical.hpp"

using namespace brodylab;

namespace {

HoloCurve wp_curve() {
  EllipticComponent one{}, p{};
  one[0][0] = 1.0;
  p[1][0] = 1.0;
  return HoloCurve::elliptic(PlaneLattice({1.0, 0.0}, {0.3, 1.2}), {one, p});
}

void BM_WeierstrassP(benchmark::State& state) {
  const PlaneLattice L({1.0, 0.0}, {0.3, 1.2});
  Complex z(0.21, 0.37);
  for (auto _ : state) {
    benchmark::DoNotOptimize(weierstrass_p(z, L));
    z += Complex(1e-9, 0.0);
  }
}
BENCHMARK(BM_WeierstrassP);

void BM_SphericalDerivative(benchmark::State& state) {
  const auto f = wp_curve();
  for (auto _ : state) benchmark::DoNotOptimize(spherical_derivative(f, Complex(0.21, 0.37)));
}
BENCHMARK(BM_SphericalDerivative);

void BM_EnergyCell(benchmark::State& state) {
  const auto f = wp_curve();
  const Domain cell = Domain::cell(*f.period_lattice());
  EnergyOptions opt;
  opt.base_grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(energy(f, cell, 0, opt));
}
BENCHMARK(BM_EnergyCell)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_EvaluateCandidate(benchmark::State& state) {
  const auto fam = rho_family("elliptic-n1");
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_candidate(fam, fam.start).rho_normalized);
}
BENCHMARK(BM_EvaluateCandidate)->Unit(benchmark::kMillisecond);

}  // namespace
