#include <cmath>

#include <gtest/gtest.h>

#include "brodylab/projective.hpp"
#include "brodylab/rng.hpp"

using namespace brodylab;

TEST(Projective, NormalizesLargestCoordinateToOne) {
  const ProjectivePoint p{Complex(2.0, 0.0), Complex(0.0, 4.0)};
  EXPECT_DOUBLE_EQ(std::abs(p[1]), 1.0);
  EXPECT_NEAR(std::abs(p[0]), 0.5, 1e-15);
}

TEST(Projective, RejectsZeroAndTooShort) {
  EXPECT_THROW(ProjectivePoint(HomogVec{0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(ProjectivePoint(HomogVec{1.0}), std::invalid_argument);
}

TEST(Projective, ScalingInvariance) {
  const HomogVec u{Complex(1.0, 2.0), Complex(-0.5, 0.3), 0.7};
  HomogVec v = u;
  v *= Complex(-3.0, 1.5);
  EXPECT_NEAR(chordal_distance(u, v), 0.0, 1e-15);
}

TEST(Projective, ChordalIsSineOfFubiniStudyAngle) {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    HomogVec u(3), v(3);
    for (int i = 0; i < 3; ++i) {
      u[i] = Complex(rng.normal(), rng.normal());
      v[i] = Complex(rng.normal(), rng.normal());
    }
    const ProjectivePoint a(u), b(v);
    EXPECT_NEAR(chordal_distance(a, b), std::sin(kSqrtPi * fs_distance(a, b)), 1e-12);
  }
}

TEST(Projective, AntipodalPointsAreAtDistanceOne) {
  EXPECT_NEAR(chordal_distance(ProjectivePoint{1.0, 0.0}, ProjectivePoint{0.0, 1.0}), 1.0, 1e-15);
  EXPECT_NEAR(fs_distance(ProjectivePoint{1.0, 0.0}, ProjectivePoint{0.0, 1.0}), kSqrtPi / 2.0, 1e-15);
}

TEST(Projective, AffineChartMatchesHomogeneous) {
  const Complex z[2] = {Complex(0.3, -1.0), 2.0};
  const Complex w[2] = {Complex(-0.1, 0.2), Complex(0.0, 1.0)};
  const HomogVec u{1.0, z[0], z[1]};
  const HomogVec v{1.0, w[0], w[1]};
  EXPECT_NEAR(affine_chordal_distance(z, w), chordal_distance(u, v), 1e-15);
}
