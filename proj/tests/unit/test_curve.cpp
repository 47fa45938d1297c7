#include <cmath>

#include <gtest/gtest.h>

#include "brodylab/curve.hpp"

using namespace brodylab;

namespace {

HoloCurve line_curve() { return HoloCurve::rational({Polynomial{1.0}, Polynomial{0.0, 1.0}}); }

HoloCurve wp_curve(const PlaneLattice& L) {
  EllipticComponent one{}, p{};
  one[0][0] = 1.0;
  p[1][0] = 1.0;
  return HoloCurve::elliptic(L, {one, p});
}

}  // namespace

TEST(Curve, RationalRejectsCommonRootAndZero) {
  EXPECT_THROW(HoloCurve::rational({Polynomial{-1.0, 1.0}, Polynomial{-1.0, 0.0, 1.0}}), PreconditionError);
  EXPECT_THROW(HoloCurve::rational({Polynomial{}, Polynomial{}}), PreconditionError);
  EXPECT_THROW(HoloCurve::rational({Polynomial{1.0}}), std::invalid_argument);
}

TEST(Curve, ConstantCurve) {
  const auto c = HoloCurve::constant(HomogVec{1.0, 2.0});
  EXPECT_TRUE(c.is_constant());
  EXPECT_NEAR(chordal_distance(c(Complex(5.0, -3.0)), ProjectivePoint{0.5, 1.0}), 0.0, 1e-15);
  EXPECT_FALSE(line_curve().is_constant());
}

TEST(Curve, TransformedComposesAffineMaps) {
  const auto f = line_curve().transformed(Complex(0.0, 2.0), 1.0);
  const Complex z(0.3, -0.7);
  const ProjectivePoint expected{1.0, Complex(0.0, 2.0) * z + 1.0};
  EXPECT_NEAR(chordal_distance(f(z), expected), 0.0, 1e-15);
  EXPECT_THROW(line_curve().transformed(0.0, 1.0), std::invalid_argument);
  // The derivative picks up the factor alpha.
  const Jet jet = f.lift(z);
  EXPECT_NEAR(std::abs(jet.deriv[1] * jet.value[0] - jet.deriv[0] * jet.value[1]) /
                  std::norm(jet.value[0]), 2.0, 1e-12);
}

TEST(Curve, EllipticIsPeriodicAndFiniteAtPoles) {
  const PlaneLattice L({1.0, 0.0}, {0.4, 1.3});
  const auto f = wp_curve(L);
  ASSERT_TRUE(f.period_lattice().has_value());
  const Complex z(0.21, 0.37);
  EXPECT_NEAR(chordal_distance(f(z), f(z + L.w1() - L.w2())), 0.0, 1e-10);
  // At a lattice point the curve passes through [0:1].
  EXPECT_NEAR(chordal_distance(f(L.w2()), ProjectivePoint{0.0, 1.0}), 0.0, 1e-10);
}

TEST(Curve, LiftDerivativeMatchesFiniteDifferenceInChart) {
  const auto f = wp_curve(PlaneLattice::square(1.0));
  const Complex z(0.3, 0.2);
  const double h = 1e-6;
  const Jet c = f.lift(z, z);
  const Jet p = f.lift(z + h, z);
  const Jet m = f.lift(z - h, z);
  for (int i = 0; i < 2; ++i) {
    const Complex fd = (p.value[i] - m.value[i]) / (2.0 * h);
    EXPECT_LT(std::abs(fd - c.deriv[i]), 1e-6 * (1.0 + std::abs(c.deriv[i])));
  }
}

TEST(Curve, ChartReflectionSendsTargetToFirstAxis) {
  const HomogVec q{Complex(0.3, 0.1), Complex(-1.0, 0.5), Complex(0.0, 2.0)};
  const ChartReflection H(q);
  const HomogVec hq = H.apply(q);
  EXPECT_NEAR(std::abs(hq[0]), q.norm(), 1e-12);
  EXPECT_NEAR(std::abs(hq[1]) + std::abs(hq[2]), 0.0, 1e-12);
  const HomogVec x{1.0, Complex(0.0, 1.0), -2.0};
  EXPECT_NEAR(H.apply(x).norm(), x.norm(), 1e-12);
  const HomogVec back = H.apply(H.apply(x));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(back[i] - x[i]), 0.0, 1e-12);
}

TEST(Curve, PureBubbleDistanceProfile) {
  for (int N : {1, 2, 3}) {
    HomogVec q(N + 1);
    for (int i = 0; i <= N; ++i) q[i] = Complex(1.0 + i, -0.5 * i);
    const double a = 0.7;
    const Complex p(2.0, -1.0);
    const auto f = HoloCurve::constant(q).bubbled(p, q, a);
    EXPECT_EQ(f.kind(), CurveKind::bubbled);
    EXPECT_EQ(f.bubble_count(), 1);
    for (double r : {0.3, 1.0, 4.0}) {
      const Complex z = p + std::polar(r, 0.9);
      const double w6 = std::pow(r, 6);
      const double expected = std::sqrt(N) * a / std::sqrt(w6 + N * a * a);
      EXPECT_NEAR(chordal_distance(f(z).homog(), q), expected, 1e-12) << "N=" << N << " r=" << r;
    }
    EXPECT_THROW(HoloCurve::constant(q).bubbled(p, q, 0.0), std::invalid_argument);
  }
}
