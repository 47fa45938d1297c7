#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "brodylab/curve.hpp"
#include "brodylab/domain.hpp"

namespace brodylab {

/// area(boundary_r Omega) / area(Omega), where the r-boundary is the set of a
/// with D_r(a) meeting both Omega and its complement, by grid counting
/// (spacing r/8 unless given). Throws std::invalid_argument for zero-area domains.
double folner_boundary_ratio(const Domain& omega, double r, double resolution = 0.0);

using WindowFunctional = std::function<double(const Domain&)>;

struct OrnsteinWeissTrace {
  std::vector<double> values;  ///< h(Omega_n) / area(Omega_n)
  std::vector<double> areas;
  /// (max - min) / |last| over the last three values (fewer if fewer windows).
  double spread = 0.0;
  /// Relative change between the last two values.
  double last_step = 0.0;
  std::size_t spot_checks = 0;
};

/// Spot-checks monotonicity on nested consecutive windows, subadditivity by
/// splitting the first window in half, and translation invariance under seeded
/// shifts (relative tolerance `tol`). Throws NumericalError naming the violated
/// condition.
OrnsteinWeissTrace ornstein_weiss_trace(const WindowFunctional& h, const std::vector<Domain>& windows,
                                        std::uint64_t seed = 1, double tol = 1e-3);

/// h(Omega) = sup_a int_{a+Omega} |df|^2 for a doubly periodic curve, using a
/// table of |df|^2 at the midpoints of an m x m subdivision of one cell.
/// The integration nodes are those midpoints repeated periodically; the sup is
/// over a translate_grid^2 grid of shifts across one cell, measured from the
/// window's bounding-box corner.
class PeriodicEnergyFunctional {
 public:
  PeriodicEnergyFunctional(const HoloCurve& f, int m = 64, int translate_grid = 4);
  double operator()(const Domain& omega) const;
  double cell_mean() const { return cell_mean_; }

 private:
  PlaneLattice lattice_;
  int m_;
  int translate_grid_;
  double h_;
  std::vector<double> table_;
  double cell_mean_ = 0.0;
};

}  // namespace brodylab
