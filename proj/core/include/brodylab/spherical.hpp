#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "brodylab/curve.hpp"
#include "brodylab/domain.hpp"

namespace brodylab {

/// |df|^2 = |v ^ v'|^2 / (pi |v|^4) for a lift jet (v, v').
double spherical_derivative_sq(const Jet& jet);

/// Closed form in the affine chart of the largest coordinate:
/// |df| = sqrt(|F'|^2 + |F ^ F'|^2) / (sqrt(pi) (1 + |F|^2)).
double spherical_derivative(const HoloCurve& f, Complex z);

/// (1/4pi) Laplacian of log|v|^2 by the 5-point stencil of step h, with a
/// lift anchored at z. Throws NumericalError if the stencil hits a zero of the lift.
double spherical_derivative_laplacian(const HoloCurve& f, Complex z, double h);

struct SupOptions {
  int refine_passes = 2;
  int top = 5;
};

struct SupResult {
  double value = 0.0;
  Complex argmax{};
  std::size_t evaluations = 0;
};

/// Grid sup of g over `domain` at spacing `resolution`, then local refinement
/// passes (4x finer each) around the best grid points.
SupResult grid_sup(const std::function<double(Complex)>& g, const Domain& domain, double resolution,
                   const SupOptions& options = {});

/// sup over A of the chordal distance between f(z) and g(z); one refinement pass.
double sup_distance(const HoloCurve& f, const HoloCurve& g, const Domain& A, double resolution);

struct EnergyOptions {
  /// Quadrature points per axis of the domain's natural parametrization
  /// (polar for disks, lattice coordinates for cells) at level 0.
  int base_grid = 256;
};

/// Integral of |df|^2 over the domain: midpoint rule with one Richardson step.
double energy(const HoloCurve& f, const Domain& domain, int quadrature_level = 0, const EnergyOptions& options = {});

struct DensityOptions {
  EnergyOptions quadrature{64};
  /// Half-width of the square of window centres for non-periodic curves;
  /// negative selects the default search radius of the curve.
  double span = -1.0;
  Complex center{};
};

/// Periodic curves: cell average of |df|^2 (window ignored).
/// Otherwise (1/L^2) max over a translate_grid^2 grid of window centres of the
/// energy of the L-square. Throws std::invalid_argument if window <= 0.
double energy_density(const HoloCurve& f, double window, int translate_grid = 8, const DensityOptions& options = {});

/// Region containing the maximizer of |df|: one cell for periodic curves,
/// disk(0, 2(1 + max root modulus of components and derivatives)) for rational
/// ones. Other kinds need an explicit box (PreconditionError).
Domain default_search_box(const HoloCurve& f);
double default_resolution(const Domain& box);

/// Grid sup of |df| with two refinement passes.
SupResult lipschitz_sup(const HoloCurve& f, const Domain& box, double resolution);

struct Normalization {
  HoloCurve curve;
  double lambda = 0.0;
};

/// lambda = sup |df| and g(z) = f(z / lambda). Throws PreconditionError
/// ("no normalization") for constant curves.
Normalization brody_normalize(const HoloCurve& f, const std::optional<Domain>& search_box = std::nullopt,
                              double resolution = 0.0);

struct NondegeneracyResult {
  bool ok = false;
  double threshold = 0.0;
  Complex worst_center{};
  double worst_sup = 0.0;
  std::size_t centers = 0;
  std::size_t failing = 0;
};

/// Checks sup_{D_R(a)} |df| >= 1/R for every grid point a of Lambda.
NondegeneracyResult is_nondegenerate(const HoloCurve& f, double R, const Domain& lambda, double resolution);

}  // namespace brodylab
