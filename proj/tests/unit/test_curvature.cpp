#include <cmath>

#include <gtest/gtest.h>

#include "brodylab/curvature.hpp"
#include "brodylab/spherical.hpp"

using namespace brodylab;

namespace {

HoloCurve elliptic_monomial(const PlaneLattice& L, int i, int j) {
  EllipticComponent one{}, m{};
  one[0][0] = 1.0;
  m[i][j] = 1.0;
  return HoloCurve::elliptic(L, {one, m});
}

}  // namespace

TEST(Curvature, ChernIntegralCountsPoleOrder) {
  const PlaneLattice L({1.0, 0.0}, {0.2, 1.1});
  EXPECT_NEAR(chern_integral(elliptic_monomial(L, 1, 0), L, 128), 4.0, 0.05);
  // The order-3 pole of wp' needs a finer grid.
  EXPECT_NEAR(chern_integral(elliptic_monomial(L, 0, 1), L, 256), 6.0, 0.01);
}

TEST(Curvature, ChernRequiresPeriodicCurve) {
  const auto line = HoloCurve::rational({Polynomial{1.0}, Polynomial{0.0, 1.0}});
  EXPECT_THROW(chern_integral(line, PlaneLattice::square(1.0), 64), PreconditionError);
}

TEST(Curvature, FieldIsTraceOfCurvature) {
  const auto line = HoloCurve::rational({Polynomial{1.0}, Polynomial{0.0, 1.0}});
  const auto field = curvature_field(line, Domain::square(Complex(-1.0, -1.0), 2.0), 0.25);
  EXPECT_FALSE(field.is_torus());
  for (int j = 0; j < field.ny(); j += 3) {
    for (int i = 0; i < field.nx(); i += 3) {
      const double d = spherical_derivative(line, field.point(i, j));
      EXPECT_NEAR(field.at(i, j), kPi * 2.0 * d * d, 1e-12);
    }
  }
}

TEST(Curvature, SamplingPointsCoverSquare) {
  const Domain sq = Domain::square(Complex(1.0, -2.0), 3.0);
  const auto pts = select_sampling_points(sq, 0.4);
  EXPECT_EQ(pts.size(), 64u);  // ceil(3 / 0.4) = 8
  for (Complex z : sq.grid_points(0.05)) {
    double best = 1e9;
    for (Complex c : pts) best = std::min(best, std::abs(z - c));
    EXPECT_LE(best, 0.4);
  }
}
