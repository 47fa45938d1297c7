#include <algorithm>

#include <gtest/gtest.h>

#include "brodylab/polynomial.hpp"

using namespace brodylab;

TEST(Polynomial, TrimsTrailingZeros) {
  const Polynomial p{1.0, 2.0, 0.0, 0.0};
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(Polynomial{0.0}.degree(), -1);
  EXPECT_TRUE(Polynomial().is_zero());
}

TEST(Polynomial, HornerValueAndDerivative) {
  const Polynomial p{Complex(1.0, 1.0), 0.0, 3.0};  // (1+i) + 3 z^2
  Complex v, d;
  p.eval(Complex(0.5, -2.0), v, d);
  const Complex z(0.5, -2.0);
  EXPECT_NEAR(std::abs(v - (Complex(1.0, 1.0) + 3.0 * z * z)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(d - 6.0 * z), 0.0, 1e-14);
  EXPECT_EQ(p.derivative().degree(), 1);
}

TEST(Polynomial, RootsOfKnownCubic) {
  // (z - 1)(z + 2)(z - i)
  const Complex i(0.0, 1.0);
  const Polynomial p{2.0 * i, Complex(-2.0, -1.0), Complex(1.0, -1.0), 1.0};
  auto r = p.roots();
  ASSERT_EQ(r.size(), 3u);
  for (Complex expected : {Complex(1.0), Complex(-2.0), i}) {
    const auto it = std::min_element(r.begin(), r.end(), [&](Complex a, Complex b) {
      return std::abs(a - expected) < std::abs(b - expected);
    });
    EXPECT_NEAR(std::abs(*it - expected), 0.0, 1e-10);
  }
}

TEST(Polynomial, CommonRootDetection) {
  const Polynomial a{-1.0, 1.0};             // z - 1
  const Polynomial b{-1.0, 0.0, 1.0};        // z^2 - 1
  const Polynomial c{2.0, 1.0};              // z + 2
  EXPECT_TRUE(have_common_root({a, b}));
  EXPECT_FALSE(have_common_root({a, c}));
}
