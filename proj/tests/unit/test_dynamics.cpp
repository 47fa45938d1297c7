#include <cmath>

#include <gtest/gtest.h>

#include "brodylab/dynamics.hpp"

using namespace brodylab;

TEST(Dynamics, TranslatedLatticeDistanceIsAMetric) {
  const auto fam = translated_lattice_family(1.0);
  const Domain omega = Domain::square(0.0, 1.0);
  const std::vector<double> a{0.1, 0.2}, b{0.4, 0.75};
  EXPECT_NEAR(dynamical_distance(fam, a, a, omega, 0.25), 0.0, 1e-12);
  const double ab = dynamical_distance(fam, a, b, omega, 0.25);
  EXPECT_GT(ab, 0.0);
  EXPECT_LE(ab, 1.0);
  EXPECT_DOUBLE_EQ(ab, dynamical_distance(fam, b, a, omega, 0.25));
  // Parameters are translations, so shifting by a full period is trivial.
  EXPECT_NEAR(dynamical_distance(fam, {0.0, 0.2}, {1.0 - 1e-12, 0.2}, omega, 0.25), 0.0, 1e-9);
}

TEST(Dynamics, LargerWindowsSeeMore) {
  const auto fam = translated_lattice_family(1.0);
  const std::vector<double> a{0.1, 0.2}, b{0.15, 0.2};
  EXPECT_LE(dynamical_distance(fam, a, b, Domain::square(0.0, 1.0), 0.25),
            dynamical_distance(fam, a, b, Domain::square(0.0, 2.0), 0.25) + 1e-15);
}

TEST(Dynamics, EntropyAtScaleReports) {
  const auto fam = translated_lattice_family(1.0);
  const auto reps = entropy_at_scale(fam, 0.4, {Domain::square(0.0, 1.0)}, 100, 5);
  ASSERT_EQ(reps.size(), 1u);
  const auto& r = reps.front();
  EXPECT_EQ(r.sample_size, 100u);
  EXPECT_GE(r.sep_count, 1u);
  EXPECT_LE(r.sep_count, 100u);
  EXPECT_THROW(entropy_at_scale(fam, 0.4, {Domain::square(0.0, 1.0)}, 99, 5), std::invalid_argument);
  EXPECT_NEAR(r.entropy, std::log(static_cast<double>(r.cover_count)) / r.window_area, 1e-12);
  // Same seed, same counts.
  EXPECT_EQ(entropy_at_scale(fam, 0.4, {Domain::square(0.0, 1.0)}, 100, 5).front().cover_count, r.cover_count);
}

TEST(Dynamics, FitGrowthRecoversConstants) {
  const double eps = 0.05, C2 = 2.0, C3 = 0.5;
  const double u = std::log(C2 / eps);
  GrowthRun r1, r2;
  r1.L = 1.0;
  r1.exponent = 3.0;
  r1.count = static_cast<std::size_t>(std::llround(std::exp((3.0 + C3) * u)));
  r2.L = 2.0;
  r2.exponent = 8.0;
  r2.count = static_cast<std::size_t>(std::llround(std::exp((8.0 + 2.0 * C3) * u)));
  const auto fit = fit_growth({r1, r2}, eps);
  EXPECT_FALSE(fit.clamped);
  EXPECT_NEAR(fit.C2, C2, 1e-4);
  EXPECT_NEAR(fit.C3, C3, 1e-4);
}

TEST(Dynamics, FitGrowthClampsInfeasibleSolve) {
  GrowthRun r1, r2;
  r1.L = 1.0;
  r1.exponent = 2.0;
  r1.count = 20;
  r2.L = 2.0;
  r2.exponent = 8.0;
  r2.count = 30;
  const auto fit = fit_growth({r1, r2}, 0.1);
  EXPECT_TRUE(fit.clamped);
  EXPECT_EQ(fit.C3, 0.0);
  // Both runs sit under the fitted bound.
  EXPECT_LE(std::log(20.0), 2.0 * std::log(fit.C2 / 0.1) + 1e-12);
  EXPECT_LE(std::log(30.0), 8.0 * std::log(fit.C2 / 0.1) + 1e-12);
  EXPECT_THROW(fit_growth({r1}, 0.1), std::invalid_argument);
}

TEST(Dynamics, GrowthCheckRejectsDegenerateCurve) {
  const auto line = HoloCurve::rational({Polynomial{1.0}, Polynomial{0.0, 1e-6}});
  EXPECT_THROW(entropy_growth_check(line, 1.0, Domain::square(0.0, 2.0), 0.05, 0.1, 10, 1), PreconditionError);
  EXPECT_THROW(entropy_growth_check(line, 1.0, Domain::disk(0.0, 2.0), 0.05, 0.1, 10, 1), std::invalid_argument);
}
