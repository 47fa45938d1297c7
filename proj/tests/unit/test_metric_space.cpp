#include <cmath>

#include <gtest/gtest.h>

#include "brodylab/metric_space.hpp"
#include "brodylab/rng.hpp"
#include "brodylab/types.hpp"

using namespace brodylab;

namespace {

FiniteMetricSpace random_plane_space(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Complex> pts(n);
  for (auto& p : pts) p = Complex(rng.uniform(), rng.uniform());
  return FiniteMetricSpace::from_function(n, [&](std::size_t i, std::size_t j) { return std::abs(pts[i] - pts[j]); });
}

}  // namespace

TEST(MetricSpace, FromMatrixValidates) {
  EXPECT_NO_THROW(FiniteMetricSpace::from_matrix({0, 1, 1, 0}, 2));
  EXPECT_THROW(FiniteMetricSpace::from_matrix({0, 1, 2, 0}, 2), std::invalid_argument);
  EXPECT_THROW(FiniteMetricSpace::from_matrix({1, 1, 1, 0}, 2), std::invalid_argument);
  EXPECT_THROW(FiniteMetricSpace::from_matrix({0, -1, -1, 0}, 2), std::invalid_argument);
  EXPECT_THROW(FiniteMetricSpace::from_matrix({0, 1, 1}, 2), std::invalid_argument);
}

TEST(MetricSpace, TriangleCheckFindsViolation) {
  auto s = FiniteMetricSpace::from_matrix({0, 1, 5, 1, 0, 1, 5, 1, 0}, 3);
  const auto t = s.check_triangle();
  EXPECT_FALSE(t.ok);
  EXPECT_NEAR(t.worst_violation, 3.0, 1e-12);
  EXPECT_TRUE(random_plane_space(30, 2).check_triangle().ok);
}

TEST(MetricSpace, GreedySeparatedIsMaximal) {
  const auto s = random_plane_space(80, 4);
  for (double eps : {0.05, 0.2, 0.5}) {
    const auto sub = greedy_separated(s, eps);
    EXPECT_TRUE(is_separated(s, sub, eps));
    EXPECT_TRUE(is_maximal_separated(s, sub, eps));
    const auto shuffled = greedy_separated(s, eps, 9);
    EXPECT_TRUE(is_maximal_separated(s, shuffled, eps));
  }
}

TEST(MetricSpace, CoverChain) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = random_plane_space(60, seed);
    const double eps = 0.3;
    const auto centres = greedy_cover_centers(s, eps);
    EXPECT_TRUE(is_cover(s, centres, eps));
    EXPECT_LE(greedy_separated(s, eps).size(), greedy_cover(s, eps));
    EXPECT_LE(greedy_cover(s, eps), greedy_separated(s, 0.49 * eps).size());
  }
}

TEST(MetricSpace, ExactCountsBoundGreedy) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = random_plane_space(12, seed);
    const double eps = 0.35;
    EXPECT_LE(greedy_separated(s, eps).size(), exact_separated_count(s, eps));
    EXPECT_GE(greedy_cover(s, eps), exact_cover_count(s, eps));
  }
  EXPECT_THROW(exact_separated_count(random_plane_space(21, 1), 0.1), std::invalid_argument);
}

TEST(MetricSpace, CoverRadiusIsBelowHalf) {
  EXPECT_LT(cover_radius(1.0), 0.5);
  EXPECT_EQ(std::nextafter(cover_radius(1.0), 1.0), 0.5);
}

TEST(MetricSpace, BanachBallBound) {
  EXPECT_DOUBLE_EQ(banach_ball_bound(2, 1.0, 0.5), 25.0);
  for (int n = 1; n <= 3; ++n) {
    for (double eps : {0.5, 1.0}) {
      const double r = 1.0;
      const int per_axis = 2 * static_cast<int>(std::ceil(2.0 * r / eps)) + 1;
      const auto grid = sup_ball_grid(n, r, per_axis);
      EXPECT_EQ(grid.size(), static_cast<std::size_t>(std::pow(per_axis, n)) * n);
      EXPECT_LE(static_cast<double>(point_cloud_separated_count(grid, n, eps, Norm::sup)), banach_ball_bound(n, r, eps));
    }
  }
}

TEST(MetricSpace, MonotonicityCheck) {
  const auto X = random_plane_space(10, 3);
  std::vector<std::size_t> id(10);
  for (std::size_t i = 0; i < 10; ++i) id[i] = i;
  const auto m = check_map_monotonicity(X, X, id, 0.3, 0.2);
  EXPECT_TRUE(m.hypothesis);
  ASSERT_TRUE(m.exact_y.has_value());
  EXPECT_TRUE(m.conclusion);
}

TEST(MetricSpace, MmdimSlope) {
  std::map<double, double> s;
  for (double eps : {0.1, 0.01, 0.001}) s[eps] = 2.0 * std::abs(std::log(eps)) + 1.0;
  const auto est = mmdim_slope(s);
  EXPECT_NEAR(est.slope, 2.0, 1e-12);
  EXPECT_NEAR(est.intercept, 1.0, 1e-12);
  EXPECT_THROW(mmdim_slope({{0.1, 1.0}, {0.05, 2.0}}), std::invalid_argument);
  EXPECT_THROW(mmdim_slope({{0.1, 1.0}, {0.08, 2.0}, {0.06, 3.0}}), std::invalid_argument);
}
