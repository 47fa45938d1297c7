#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "brodylab/helmholtz.hpp"

using namespace brodylab;

namespace {

const PlaneLattice kTorus = PlaneLattice::square(16.0);

}  // namespace

TEST(Helmholtz, ConstantSolution) {
  auto psi = ScalarField::torus(kTorus, 32, 32);
  psi.fill([](Complex) { return 0.75; });
  const auto phi = solve_helmholtz(psi);
  for (double v : phi.values()) EXPECT_NEAR(v, 0.75, 1e-12);
}

TEST(Helmholtz, SingleFourierMode) {
  // psi = cos(2 pi k x / L) gives phi = psi / (1 + (2 pi k / L)^2).
  const double L = 16.0;
  const int k = 3;
  const double w = 2.0 * kPi * k / L;
  auto psi = ScalarField::torus(kTorus, 64, 64);
  psi.fill([&](Complex z) { return std::cos(w * z.real()); });
  const auto phi = solve_helmholtz(psi);
  for (int j = 0; j < 64; j += 7) {
    for (int i = 0; i < 64; ++i) {
      EXPECT_NEAR(phi.at(i, j), psi.at(i, j) / (1.0 + w * w), 1e-12);
    }
  }
}

TEST(Helmholtz, ResidualAndMaximumPrinciple) {
  Rng rng(11);
  for (int s = 0; s < 5; ++s) {
    const auto psi = random_trig_field(PlaneLattice({16.0, 0.0}, {3.0, 14.0}), 48, 48, 6, rng);
    const auto phi = solve_helmholtz(psi);
    const auto back = apply_helmholtz(phi);
    double err = 0.0;
    for (std::size_t i = 0; i < psi.values().size(); ++i) err = std::max(err, std::abs(back.values()[i] - psi.values()[i]));
    EXPECT_LT(err, 1e-10 * (1.0 + psi.max_abs()));
    EXPECT_LE(phi.max_abs(), psi.max_abs() + 1e-12);
  }
}

TEST(Helmholtz, RejectsRectangleFields) {
  const auto r = ScalarField::rectangle(0.0, 0.1, 8, 8);
  EXPECT_THROW(solve_helmholtz(r), PreconditionError);
}

TEST(Helmholtz, SpectralGradientOfMode) {
  const double w = 2.0 * kPi / 16.0;
  auto psi = ScalarField::torus(kTorus, 32, 32);
  psi.fill([&](Complex z) { return std::sin(w * z.imag()); });
  auto dx = psi, dy = psi;
  spectral_gradient(psi, dx, dy);
  EXPECT_LT(dx.max_abs(), 1e-12);
  EXPECT_NEAR(dy.at(0, 0), w, 1e-12);
  EXPECT_NEAR(c1_norm(psi), 1.0 + w, 1e-2);
}

TEST(Helmholtz, FieldTextRoundTrip) {
  Rng rng(5);
  const auto psi = random_trig_field(kTorus, 8, 8, 2, rng);
  std::stringstream ss;
  psi.write_text(ss);
  const auto back = ScalarField::read_text(ss);
  EXPECT_EQ(back.values(), psi.values());
}

TEST(Helmholtz, KappaEstimateStaysPositive) {
  KappaOptions opt;
  opt.grid = 32;
  opt.max_freq = 4;
  const auto k = estimate_kappa(10.0, 4.0, 12, 3, opt);
  EXPECT_EQ(k.samples, 12);
  EXPECT_TRUE(k.positivity_held);
  EXPECT_GT(k.kappa_hat, 0.0);
}

TEST(Helmholtz, FunctionNondegeneracy) {
  auto psi = ScalarField::torus(kTorus, 32, 32);
  psi.fill([](Complex) { return 1.0; });
  EXPECT_TRUE(is_function_nondegenerate(psi, 2.0).ok);
  psi.fill([](Complex) { return 0.01; });
  EXPECT_FALSE(is_function_nondegenerate(psi, 2.0).ok);
}
