#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "brodylab/curve.hpp"
#include "brodylab/domain.hpp"
#include "brodylab/metric_space.hpp"
#include "brodylab/rng.hpp"

namespace brodylab {

/// Parametric family of curves acted on by translations a.f(z) = f(z + a).
/// The base metric is the chordal sup over `window` sampled at `resolution`.
struct CurveFamily {
  std::string id;
  std::vector<std::pair<double, double>> box;
  std::function<HoloCurve(const std::vector<double>&)> make;
  Domain window = Domain::square({0.0, 0.0}, 1.0);
  double resolution = 0.25;

  HoloCurve operator()(const std::vector<double>& theta) const;
  bool contains(const std::vector<double>& theta) const;
  std::vector<double> sample(Rng& rng) const;
};

/// Single fixed curve (parameter box is a point).
CurveFamily constant_family(const HoloCurve& f);
/// [1 : wp(z + s + i t)] over the square lattice of side `period`, (s, t) in [0, period)^2.
CurveFamily translated_lattice_family(double period = 1.0);

/// sup over a in grid(Omega) of the base metric between a.f1 and a.f2.
double dynamical_distance(const CurveFamily& family, const std::vector<double>& theta1,
                          const std::vector<double>& theta2, const Domain& omega, double resolution);

/// Points z = a + w (a in grid(Omega), w in grid(window)) on which the
/// dynamical distance is evaluated, deduplicated on the common grid.
std::vector<Complex> dynamical_sample_points(const CurveFamily& family, const Domain& omega, double resolution);

/// d_Omega metric space on the given parameter samples.
FiniteMetricSpace dynamical_space(const CurveFamily& family, const std::vector<std::vector<double>>& thetas,
                                  const Domain& omega, double resolution);

/// Per window: seeded parameter sample, d_Omega space, greedy counts and
/// S = log(cover) / area. Counts are sample-level lower approximations.
std::vector<CountReport> entropy_at_scale(const CurveFamily& family, double eps, const std::vector<Domain>& windows,
                                          int sample_size, std::uint64_t seed, double resolution = 0.25);

struct GrowthRun {
  double L = 0.0;
  double energy = 0.0;    ///< int_Lambda |df|^2
  double exponent = 0.0;  ///< 2(N+1) energy
  std::size_t count = 0;  ///< greedy eps-separated count under d_Lambda
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

struct GrowthFit {
  double C2 = 0.0;
  double C3 = 0.0;
  /// True when the two-window equality solve was infeasible and C3 was clamped to 0.
  bool clamped = false;
};

struct GrowthReport {
  double R = 0.0;
  double eps = 0.0;
  double delta2 = 0.0;
  int sample_size = 0;
  std::uint64_t seed = 0;
  std::vector<GrowthRun> runs;           ///< L, 2L at sample_size
  std::vector<GrowthRun> runs_doubled;   ///< L, 2L at 2 sample_size
  GrowthFit fit;
  GrowthFit fit_doubled;
  bool bound_holds = false;  ///< log count <= (exponent + C3 L) log(C2 / eps) on every run
  bool stable = false;       ///< C2, C3 within 20% under sample doubling
  bool scaling_ok = false;   ///< log count(2L) <= log count(L) * exponent(2L) / exponent(L) + log 2
  bool pass() const { return bound_holds && stable && scaling_ok; }
};

/// Perturbations g = M f(z + tau) of a periodic (elliptic or transformed
/// elliptic) curve, M = I + E with small complex E, kept when
/// sup_{D_5(Lambda)} d(f, g) <= delta2. Lambda is the square [0, L]^2 with L
/// its side; the second window is [0, 2L]^2. Throws PreconditionError unless f
/// is R-nondegenerate over Lambda and lipschitz_sup(f) <= 2.
GrowthReport entropy_growth_check(const HoloCurve& f, double R, const Domain& lambda, double eps, double delta2,
                                  int sample_size, std::uint64_t seed, double resolution = 0.1);

/// Two-window fit of (C2, C3) to y = (E + C3 L) log(C2 / eps).
GrowthFit fit_growth(const std::vector<GrowthRun>& runs, double eps);

nlohmann::json to_json(const GrowthReport& report);

}  // namespace brodylab
