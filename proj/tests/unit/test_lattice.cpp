#include <gtest/gtest.h>

#include "brodylab/lattice.hpp"
#include "brodylab/types.hpp"

using namespace brodylab;

namespace {

const PlaneLattice kLattices[] = {PlaneLattice::square(1.0), PlaneLattice({1.0, 0.0}, {0.3, 1.7}),
                                  PlaneLattice({2.0, 0.5}, {7.0, 3.0})};

}  // namespace

TEST(Lattice, RejectsDegenerateOrientation) {
  EXPECT_THROW(PlaneLattice({1.0, 0.0}, {2.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(PlaneLattice({0.0, 1.0}, {1.0, 0.0}), std::invalid_argument);
}

TEST(Lattice, CoordinatesRoundTrip) {
  const PlaneLattice L({2.0, 0.5}, {7.0, 3.0});
  double s = 0.0, t = 0.0;
  L.coordinates(L.point(0.3, -1.25), s, t);
  EXPECT_NEAR(s, 0.3, 1e-12);
  EXPECT_NEAR(t, -1.25, 1e-12);
  EXPECT_TRUE(L.contains_vector(L.point(3.0, -2.0)));
  EXPECT_FALSE(L.contains_vector(L.point(0.5, 0.0)));
}

TEST(Lattice, WeierstrassDifferentialEquation) {
  for (const PlaneLattice& L : kLattices) {
    const Complex z(0.23, 0.41);
    const auto v = weierstrass_p(z, L);
    const Complex rhs = 4.0 * v.p * v.p * v.p - L.g2() * v.p - L.g3();
    EXPECT_LT(std::abs(v.dp * v.dp - rhs) / std::abs(v.dp * v.dp), 1e-10);
  }
}

TEST(Lattice, WeierstrassIsDoublyPeriodicAndEven) {
  for (const PlaneLattice& L : kLattices) {
    const Complex z(0.17, -0.29);
    const auto v = weierstrass_p(z, L);
    EXPECT_LT(std::abs(weierstrass_p(z + L.w1(), L).p - v.p), 1e-9 * std::abs(v.p));
    EXPECT_LT(std::abs(weierstrass_p(z - 2.0 * L.w2(), L).p - v.p), 1e-9 * std::abs(v.p));
    EXPECT_LT(std::abs(weierstrass_p(-z, L).p - v.p), 1e-10 * std::abs(v.p));
  }
}

TEST(Lattice, DerivativeMatchesFiniteDifference) {
  const PlaneLattice L({1.0, 0.0}, {0.3, 1.7});
  const Complex z(0.31, 0.52);
  const double h = 1e-5;
  const Complex fd = (weierstrass_p(z + h, L).p - weierstrass_p(z - h, L).p) / (2.0 * h);
  EXPECT_LT(std::abs(fd - weierstrass_p(z, L).dp) / std::abs(fd), 1e-8);
}

TEST(Lattice, SquareLatticeHasNoG3) {
  EXPECT_NEAR(std::abs(PlaneLattice::square(1.0).g3()), 0.0, 1e-9);
}

TEST(Lattice, PoleThrows) {
  EXPECT_THROW(weierstrass_p(PlaneLattice::square(1.0).point(1.0, 2.0), PlaneLattice::square(1.0)), PreconditionError);
}
