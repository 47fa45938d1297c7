#include <cmath>

#include <gtest/gtest.h>

#include "brodylab/spherical.hpp"

using namespace brodylab;

namespace {

HoloCurve line(Complex c) { return HoloCurve::rational({Polynomial{1.0}, Polynomial{0.0, c}}); }

HoloCurve wp_curve() {
  EllipticComponent one{}, p{};
  one[0][0] = 1.0;
  p[1][0] = 1.0;
  return HoloCurve::elliptic(PlaneLattice::square(1.0), {one, p});
}

}  // namespace

TEST(Spherical, LineDerivativeClosedForm) {
  const auto f = line(1.0);
  for (Complex z : {Complex(0.0), Complex(1.0, 1.0), Complex(-3.0, 0.5)}) {
    const double expected = 1.0 / (kSqrtPi * (1.0 + std::norm(z)));
    EXPECT_NEAR(spherical_derivative(f, z), expected, 1e-14);
    EXPECT_NEAR(spherical_derivative_laplacian(f, z, 1e-3), expected, 1e-6);
  }
}

TEST(Spherical, EnergyOfLineOnDisk) {
  // 1/(1+r^2) integrates to 1 - 1/(1+R^2) over the R-disk.
  EXPECT_NEAR(energy(line(1.0), Domain::disk(0.0, 10.0)), 1.0 - 1.0 / 101.0, 1e-6);
}

TEST(Spherical, ClosedFormAgreesWithLaplacianOnElliptic) {
  const auto f = wp_curve();
  for (Complex z : {Complex(0.3, 0.2), Complex(0.45, 0.5), Complex(0.11, 0.83)}) {
    EXPECT_NEAR(spherical_derivative(f, z), spherical_derivative_laplacian(f, z, 1e-3), 2e-4);
  }
}

TEST(Spherical, LaplacianErrorIsFirstOrderAtCriticalPoints) {
  // wp vanishes with wp' at (1+i)/2 on the square lattice, so |df| = 0 there
  // and the stencil returns sqrt of an O(h^2) truncation error.
  const auto f = wp_curve();
  const Complex z0(0.5, 0.5);
  EXPECT_LT(spherical_derivative(f, z0), 1e-12);
  const double a = spherical_derivative_laplacian(f, z0, 1e-3);
  const double b = spherical_derivative_laplacian(f, z0, 1e-4);
  EXPECT_NEAR(a / b, 10.0, 0.05);
}

TEST(Spherical, GridSupFindsInteriorMaximum) {
  const auto g = [](Complex z) { return 1.0 - std::norm(z - Complex(0.3, -0.2)); };
  const SupResult s = grid_sup(g, Domain::disk(0.0, 1.0), 0.1);
  EXPECT_NEAR(s.value, 1.0, 1e-4);
  EXPECT_NEAR(std::abs(s.argmax - Complex(0.3, -0.2)), 0.0, 2e-2);
}

TEST(Spherical, NormalizationOfScaledLine) {
  const auto n = brody_normalize(line(2.0));
  EXPECT_NEAR(n.lambda, 2.0 / kSqrtPi, 1e-6);
  EXPECT_NEAR(lipschitz_sup(n.curve, Domain::disk(0.0, 3.0), 0.05).value, 1.0, 1e-6);
  EXPECT_THROW(brody_normalize(HoloCurve::constant(HomogVec{1.0, 1.0})), PreconditionError);
}

TEST(Spherical, EnergyDensityOfEllipticMatchesChernPerCell) {
  // [1:wp] has degree 2 per cell.
  EXPECT_NEAR(energy_density(wp_curve(), 1.0), 2.0, 1e-2);
  EXPECT_THROW(energy_density(line(1.0), 0.0), std::invalid_argument);
}

TEST(Spherical, NondegeneracyDetectsFlatCurves) {
  const Domain lambda = Domain::square(0.0, 2.0);
  EXPECT_TRUE(is_nondegenerate(wp_curve(), 1.0, lambda, 0.5).ok);
  // The flattened line has |df| ~ 1e-6 / sqrt(pi): far below 1/R on R = 1 disks.
  const auto flat = is_nondegenerate(line(1e-6), 1.0, lambda, 0.5);
  EXPECT_FALSE(flat.ok);
  EXPECT_GT(flat.failing, 0u);
}
