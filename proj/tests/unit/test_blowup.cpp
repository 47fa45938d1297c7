#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "brodylab/blowup.hpp"
#include "brodylab/spherical.hpp"

using namespace brodylab;

TEST(Blowup, BubbleConstantHitsOneTenth) {
  EXPECT_NEAR(bubble_constant(1), 4000.0 * std::pow(kPi, -1.5), 1e-9);
  for (int N = 1; N <= 3; ++N) EXPECT_NEAR(bubble_max_derivative(bubble_constant(N), N), 0.1, 1e-8);
  EXPECT_NEAR(bubble_constant(4) / bubble_constant(1), 0.5, 1e-14);
}

TEST(Blowup, BubbleDerivativeMatchesCurve) {
  const HomogVec q{1.0, 0.0};
  const double a = bubble_constant(1);
  const auto h = HoloCurve::constant(q).bubbled(0.0, q, a);
  const double r = std::pow(a * a / 2.0, 1.0 / 6.0);  // maximizer of r^2 / (r^6 + a^2)
  EXPECT_NEAR(spherical_derivative(h, Complex(r, 0.0)), 0.1, 1e-8);
}

TEST(Blowup, GreedyCentersAreSeparatedAndCover) {
  const double R = 3.0;
  EXPECT_EQ(greedy_centers(Domain::square(0.0, R), R).size(), 1u);
  const Domain lambda = Domain::square(Complex(-2.0, 5.0), 20.0);
  const auto c = greedy_centers(lambda, R, 0.5);
  ASSERT_GT(c.size(), 1u);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) EXPECT_GE(std::abs(c[i] - c[j]), 2.0 * R - 1e-12);
  }
  EXPECT_TRUE(centers_cover(lambda, c, R, 0.5));
  EXPECT_FALSE(centers_cover(lambda, {c.front()}, R, 0.5));
}

TEST(Blowup, ConstantCurveHasOnlyBadCenters) {
  const auto f = HoloCurve::constant(HomogVec{1.0, 0.5});
  const auto plan = plan_centers(f, Domain::square(0.0, 10.0), 2.0, 0.05);
  EXPECT_EQ(plan.bad_count(), plan.centers.size());
  EXPECT_EQ(plan.targets.size(), plan.centers.size());
}

TEST(Blowup, ResolveIsIdentityWithoutBadCenters) {
  EllipticComponent one{}, p{};
  one[0][0] = 1.0;
  p[1][0] = 1.0;
  const auto f = HoloCurve::elliptic(PlaneLattice::square(1.0), {one, p});
  const auto plan = plan_centers(f, Domain::square(0.0, 4.0), 1.0, 0.05);
  ASSERT_EQ(plan.bad_count(), 0u);
  const auto g = resolve_with_plan(f, plan);
  const Complex z(0.37, 0.21);
  EXPECT_NEAR(chordal_distance(f(z), g(z)), 0.0, 1e-14);
}

TEST(Blowup, BlowUpOnceNamesOffendingPoint) {
  const auto f = HoloCurve::rational({Polynomial{1.0}, Polynomial{0.0, 1.0}});
  const BubbleSpec spec{0.0, HomogVec{1.0, 0.0}, 1.0};
  try {
    blow_up_once(f, spec, 10.0, 0.05);
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("at z ="), std::string::npos) << e.what();
  }
  // Small R keeps the image inside the delta3-ball.
  EXPECT_NO_THROW(blow_up_once(f, spec, 0.01, 0.05));
}

TEST(Blowup, PureBubbleDistanceConstant) {
  const auto rep = pure_bubble_report(1, 100.0, 100, 3);
  ASSERT_FALSE(rep.fits.empty());
  const auto& dist = rep.fits.front();
  EXPECT_EQ(dist.name.rfind("distance", 0), 0u);
  // d = a / sqrt(r^6 + a^2) <= a / r^3, tight for r >> a^(1/3).
  EXPECT_LE(dist.constant, rep.spec.a * (1.0 + 1e-9));
  EXPECT_GT(dist.constant, 0.9 * rep.spec.a);
  EXPECT_TRUE(rep.pass());
  EXPECT_GE(rep.C4, dist.constant);
}

TEST(Blowup, FeasibilityOnEmptyBadSet) {
  EllipticComponent one{}, p{};
  one[0][0] = 1.0;
  p[1][0] = 1.0;
  const auto f = HoloCurve::elliptic(PlaneLattice::square(1.0), {one, p});
  auto plan = check_feasibility(plan_centers(f, Domain::square(0.0, 4.0), 1.0, 0.05));
  ASSERT_TRUE(plan.feasibility.has_value());
  EXPECT_TRUE(plan.feasible());
  EXPECT_TRUE(to_json(plan).contains("feasibility"));
}
