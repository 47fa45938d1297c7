#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "brodylab/curve.hpp"
#include "brodylab/domain.hpp"

namespace brodylab {

/// Concentration constant a with max_z |dh| = 1/10 for
/// h = [1 : a/z^3 : ... : a/z^3]; closed form 4000 pi^{-3/2} N^{-1/2}.
double bubble_constant(int N);

/// max over r > 0 of 3 a r^2 sqrt(N) / (sqrt(pi) (r^6 + N a^2)), found by a
/// 1-D golden-section search (independent of the closed form).
double bubble_max_derivative(double a, int N);

struct BubbleSpec {
  Complex p;
  HomogVec q;
  double a = 0.0;
  int N() const { return q.size() - 1; }
};

/// Glue the bubble onto f in the chart centred at q. Checks
/// f(D_R(p)) within B_{delta3}(q) on a grid of spacing R/16 first and throws
/// PreconditionError naming the offending z otherwise.
HoloCurve blow_up_once(const HoloCurve& f, const BubbleSpec& spec, double R, double delta3);

struct BlowupConstants {
  double delta3 = 0.05;
  double R = 0.0;
  double R2 = 20.0;
  double C4 = 0.0;
  double lambda = 1.5;
  double R1 = 0.0;  ///< always 10 R / delta3
};

struct ConditionCheck {
  bool pass = false;
  double worst_margin = 0.0;
  Complex worst_z{};
  std::size_t probes = 0;
};

struct BlowupPlan {
  Domain lambda;
  std::vector<Complex> centers;
  std::vector<bool> good;
  /// Grid sup of |df| over D_R(p_i) for the source curve.
  std::vector<double> center_sups;
  /// q_i = f(p_i): chart targets shared by every curve resolved with this plan.
  std::vector<HomogVec> targets;
  double bubble_a = 0.0;
  double good_threshold = 0.0;
  BlowupConstants constants;
  /// Centre sum, Lipschitz product and minimum gain, once check_feasibility ran.
  std::optional<std::array<ConditionCheck, 3>> feasibility;

  std::size_t bad_count() const;
  bool feasible() const;
};

/// Greedy maximal 2R-separated centres over Lambda's grid (row-major), each
/// labelled good iff the grid sup of |df| on D_R(p_i) exceeds
/// delta3 / (4 R sqrt(pi)); ties count as bad.
BlowupPlan plan_centers(const HoloCurve& f, const Domain& lambda, double R, double delta3, double resolution = 0.0);

/// Centres only (no curve needed), as used when choosing R.
std::vector<Complex> greedy_centers(const Domain& lambda, double R, double resolution = 0.0);

/// Grid check that Lambda lies within the union of D_{2R}(p_i).
bool centers_cover(const Domain& lambda, const std::vector<Complex>& centers, double R, double resolution);

/// Evaluate the three feasibility conditions on a probe grid over a window containing D_{3R}(Lambda),
/// with sums and products over the index sets |z-p_i| > R, > R/2, > R.
BlowupPlan check_feasibility(BlowupPlan plan, double probe_resolution = 0.0);

/// Smallest R >= R2 passing the feasibility conditions for Lambda's centre
/// set, by doubling then bisection to 0.5% relative.
double choose_radius(const Domain& lambda, double delta3, double C4, double lambda_bound, double R2 = 20.0);

/// Fixed point of R -> choose_radius(square [0, 3R]^2, ...), starting from R2.
/// Throws NumericalError if it does not settle within 12 iterations.
double self_consistent_radius(double delta3, double C4, double lambda_bound, double R2 = 20.0);

/// Grid sup of |df^| over D_{R/2}(p); the bubble window requires it in (1/100, 1).
double bubble_window_sup(const HoloCurve& bubbled, Complex p, double R);

struct ResolveResult {
  HoloCurve curve;
  BlowupPlan plan;
};

/// Blow up f at every bad centre in index order. Throws PreconditionError if
/// the plan is infeasible or a blow-up precondition fails mid-iteration.
ResolveResult resolve(const HoloCurve& f, const Domain& lambda, double lambda_bound, const BlowupConstants& constants);
/// Apply an existing plan (bubbles at the plan's bad centres with its targets) to g.
HoloCurve resolve_with_plan(const HoloCurve& g, const BlowupPlan& plan);

struct ResolveCheck {
  double lipschitz = 0.0;
  bool lipschitz_ok = false;
  bool nondegenerate = false;
  double worst_sup = 0.0;
  Complex worst_center{};
};

/// lipschitz_sup over bbox(Lambda) grown by 3R, and is_nondegenerate at R1.
ResolveCheck check_resolution(const HoloCurve& resolved, const BlowupPlan& plan, double lipschitz_resolution = 0.5);

struct InequalityFit {
  std::string name;
  double constant = 0.0;
  double constant_doubled = 0.0;
  Complex worst_z{};
  bool finite = false;
  bool stable = false;
  bool pass() const { return finite && stable; }
};

struct BlowupReport {
  BubbleSpec spec;
  double R = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  /// distance, derivative, near_pair, pair_forward, pair_backward.
  std::vector<InequalityFit> fits;
  /// Raw worst deviation d(f, f^) per regime (|z-p| <= 1, <= R/2, > R/2).
  std::array<double, 3> regime_deviation{};
  /// Distance constant fitted per regime.
  std::array<double, 3> regime_c_dist{};
  /// Max of the far-field fits (all but near_pair); the value fed to feasibility.
  double C4 = 0.0;
  /// Near-centre distortion; enters only the pairwise constant C1.
  double C4_near = 0.0;
  bool pass() const;
};

/// Fit the smallest constants making bubble inequalities hold over seeded
/// samples in three regimes; repeat with doubled samples for stability (10%).
BlowupReport verify_blowup_report(const HoloCurve& f, const HoloCurve& g1, const HoloCurve& g2, const BubbleSpec& spec,
                                  double R, int samples, std::uint64_t seed);

/// Report for the pure bubble on a constant curve in dimension N, with the
/// pair difference aligned with the bubble direction.
BlowupReport pure_bubble_report(int N, double R, int samples = 400, std::uint64_t seed = 7);
/// Far-field C4 from the pure-bubble case in dimension N.
double fit_c4(int N, double R, int samples = 400, std::uint64_t seed = 7);

struct DistortionFit {
  double forward = 0.0;   ///< max d(Phi g1, Phi g2) / d(g1, g2)
  double backward = 0.0;  ///< max d(g1, g2) / sup_{|w-z|<=3} d(Phi g1, Phi g2)
  int samples = 0;
};

/// Pairwise distortion constant C1 of the resolution map over sampled z in
/// bbox(Lambda) grown by 3R.
DistortionFit fit_pairwise_distortion(const HoloCurve& g1, const HoloCurve& g2, const BlowupPlan& plan, int samples,
                                      std::uint64_t seed);

nlohmann::json to_json(const BlowupPlan& plan);
nlohmann::json to_json(const BlowupReport& report);

}  // namespace brodylab
