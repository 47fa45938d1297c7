#include <cmath>

#include <gtest/gtest.h>

#include "brodylab/rho_search.hpp"

using namespace brodylab;

TEST(RhoSearch, FamiliesAndEmbedding) {
  const auto n1 = rho_family("elliptic-n1");
  const auto n2 = rho_family("elliptic-n2");
  EXPECT_EQ(n1.N, 1);
  EXPECT_EQ(n2.N, 2);
  EXPECT_EQ(n1.box.size(), 10u);
  EXPECT_EQ(n2.box.size(), 16u);
  EXPECT_TRUE(n1.contains(n1.start));
  const auto e = embed_n1_in_n2(n1.start);
  ASSERT_EQ(e.size(), 16u);
  EXPECT_TRUE(n2.contains(e));
  EXPECT_THROW(rho_family("elliptic-n7"), std::invalid_argument);
}

TEST(RhoSearch, EmbeddedCurveHasSameRho) {
  const auto n1 = rho_family("elliptic-n1");
  const auto n2 = rho_family("elliptic-n2");
  const RhoResolution res{32, 32, 2};
  const auto a = evaluate_candidate(n1, n1.start, res);
  const auto b = evaluate_candidate(n2, embed_n1_in_n2(n1.start), res);
  EXPECT_NEAR(a.rho_normalized, b.rho_normalized, 1e-9);
  EXPECT_GT(a.rho_normalized, 0.0);
  EXPECT_LT(a.rho_normalized, 1.0);
}

TEST(RhoSearch, StartCandidateAndLSweep) {
  const auto n1 = rho_family("elliptic-n1");
  const auto c = evaluate_candidate(n1, n1.start);
  EXPECT_NEAR(c.rho_normalized, c.rho_raw / (c.lipschitz * c.lipschitz), 1e-12);
  // One full normalized period reproduces the cell density.
  const double period = std::abs(c.lattice.w1()) * c.lipschitz;
  const auto rows = l_sweep(c, {period});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].value, c.rho_normalized, 0.02 * c.rho_normalized);
}

TEST(RhoSearch, MeanDimensionEstimate) {
  EXPECT_DOUBLE_EQ(mean_dimension_estimate(1, 0.25), 1.0);
  EXPECT_DOUBLE_EQ(mean_dimension_estimate(2, 0.5), 3.0);
  EXPECT_THROW(mean_dimension_estimate(1, 1.0), std::invalid_argument);
  EXPECT_THROW(mean_dimension_estimate(1, -0.1), std::invalid_argument);
}

TEST(RhoSearch, SmallSearchIsDeterministicAndImproves) {
  const auto fam = rho_family("elliptic-n1");
  RhoSearchOptions opt;
  opt.budget = 8;
  opt.restarts = 1;
  opt.resolution = {32, 32, 1};
  opt.max_delta = 0.05;
  const auto a = maximize_rho(fam, opt);
  const auto b = maximize_rho(fam, opt);
  EXPECT_EQ(a.rho_hat, b.rho_hat);
  EXPECT_EQ(trace_csv(a), trace_csv(b));
  EXPECT_GT(a.rho_hat, 0.0);
  EXPECT_LT(a.rho_hat, 1.0);
  EXPECT_LE(std::abs(a.delta), opt.max_delta);
  EXPECT_GE(a.best.rho_normalized, evaluate_candidate(fam, fam.start, opt.resolution).rho_normalized - 1e-12);
}
