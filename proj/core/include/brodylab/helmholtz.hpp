#pragma once

#include <cstdint>
#include <string>

#include "brodylab/rng.hpp"
#include "brodylab/scalar_field.hpp"

namespace brodylab {

/// phi with (-Delta + 1) phi = psi, by exact spectral division on the torus.
/// Throws PreconditionError for non-torus fields.
ScalarField solve_helmholtz(const ScalarField& psi);
/// The discrete (-Delta + 1) with the same spectral symbol.
ScalarField apply_helmholtz(const ScalarField& phi);

/// Spectral gradient components (d/dx, d/dy) of a torus field.
void spectral_gradient(const ScalarField& psi, ScalarField& dx, ScalarField& dy);
/// grid-sup |psi| + grid-sup |grad psi|.
double c1_norm(const ScalarField& psi);

/// Real trigonometric polynomial with frequencies |j|, |l| <= max_freq in the
/// dual-lattice basis and standard normal coefficients (seeded).
ScalarField random_trig_field(const PlaneLattice& torus, int nx, int ny, int max_freq, Rng& rng);

struct FunctionNondegeneracy {
  bool ok = false;
  double worst_sup = 0.0;
  Complex worst_center{};
};

/// True iff every grid point a has grid-sup of psi over D_R(a) >= 1/R^2.
/// Torus fields wrap periodically.
FunctionNondegeneracy is_function_nondegenerate(const ScalarField& psi, double R);

struct KappaOptions {
  double torus_side = 16.0;
  int grid = 64;
  int max_freq = 8;
  /// Probability of drawing a constant psi = c with c in [1/R^2, K].
  double constant_fraction = 0.125;
  int max_consecutive_rejections = 1000;
};

struct KappaEstimate {
  double K = 0.0;
  double R = 0.0;
  /// min over admissible samples of inf phi: an empirical upper bound for kappa(K, R).
  double kappa_hat = 0.0;
  int samples = 0;
  int rejections = 0;
  /// Description of the sample attaining kappa_hat.
  std::string worst_case;
  /// inf phi > 0 on every admissible sample.
  bool positivity_held = true;
};

KappaEstimate estimate_kappa(double K, double R, int budget, std::uint64_t seed, const KappaOptions& options = {});

}  // namespace brodylab
