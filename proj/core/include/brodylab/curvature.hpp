#pragma once

#include <vector>

#include "brodylab/curve.hpp"
#include "brodylab/domain.hpp"
#include "brodylab/scalar_field.hpp"

namespace brodylab {

/// tr(Theta) = pi (N+1) |df|^2 sampled on a cell (torus field) or on a
/// square/rect (rectangle field) at roughly the given resolution.
ScalarField curvature_field(const HoloCurve& f, const Domain& cell, double resolution);

/// (1/pi) * integral over one cell of Gamma of tr(Theta) = (N+1) * cell energy.
/// Throws PreconditionError unless f is periodic over Gamma.
double chern_integral(const HoloCurve& f, const PlaneLattice& gamma, int base_grid = 512);

/// Centres of a ceil(side/delta)^2 grid of subsquares; every point of the
/// square lies within delta of one of them.
std::vector<Complex> select_sampling_points(const Domain& square, double delta);

}  // namespace brodylab
