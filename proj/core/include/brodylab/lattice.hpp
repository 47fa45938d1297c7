#pragma once

#include "brodylab/types.hpp"

namespace brodylab {

/// A lattice Z*w1 + Z*w2 in the plane with Im(w2 / w1) > 0.
///
/// Evaluation of elliptic functions uses an internally reduced basis
/// (Gauss reduction, so that tau = w2'/w1' lies in the fundamental domain);
/// the user-facing generators are kept as given.
class PlaneLattice {
 public:
  PlaneLattice() = default;
  /// Throws std::invalid_argument unless Im(w2 / w1) > 0.
  PlaneLattice(Complex w1, Complex w2);

  static PlaneLattice square(double side = 1.0) { return {Complex(side, 0.0), Complex(0.0, side)}; }
  static PlaneLattice rectangular(double width, double height) {
    return {Complex(width, 0.0), Complex(0.0, height)};
  }

  Complex w1() const { return w1_; }
  Complex w2() const { return w2_; }
  double cell_area() const { return std::abs((std::conj(w1_) * w2_).imag()); }

  /// Lattice coordinates (s, t) with z = s*w1 + t*w2.
  void coordinates(Complex z, double& s, double& t) const;
  Complex point(double s, double t) const { return s * w1_ + t * w2_; }

  /// Nearest lattice point to z (with respect to the reduced basis).
  Complex nearest_point(Complex z) const;
  /// True if v is a lattice vector to within rel_tol of the cell scale.
  bool contains_vector(Complex v, double rel_tol = 1e-9) const;
  /// True if every generator of `other` lies in this lattice.
  bool contains_lattice(const PlaneLattice& other, double rel_tol = 1e-9) const;

  PlaneLattice scaled(Complex factor) const { return {w1_ * factor, w2_ * factor}; }

  Complex reduced_w1() const { return r1_; }
  Complex reduced_tau() const { return tau_; }

  /// Weierstrass invariants g2 and g3 from the Eisenstein q-series (cached).
  Complex g2() const { return g2_; }
  Complex g3() const { return g3_; }

  friend bool operator==(const PlaneLattice& a, const PlaneLattice& b) {
    return a.w1_ == b.w1_ && a.w2_ == b.w2_;
  }

 private:
  Complex w1_{1.0, 0.0};
  Complex w2_{0.0, 1.0};
  Complex r1_{1.0, 0.0};
  Complex r2_{0.0, 1.0};
  Complex tau_{0.0, 1.0};
  Complex g2_{};
  Complex g3_{};
};

struct WeierstrassValue {
  Complex p;        ///< wp(z)
  Complex dp;       ///< wp'(z)
};

/// Weierstrass wp and wp' of the lattice at z.
///
/// Uses the trigonometric expansion
///   wp(u; 1, tau) = sum_m pi^2 / sin^2(pi (u + m tau)) - G2(tau)
/// whose terms decay like |q|^|m|, q = exp(2 pi i tau), on the reduced basis.
/// Throws PreconditionError("pole") within 1e-12 (relative to the cell scale)
/// of a lattice point.
WeierstrassValue weierstrass_p(Complex z, const PlaneLattice& lattice);

/// wp and wp' at w measured from the nearest-lattice-point offset; no pole
/// check. Used by curve evaluation after the caller handles the pole.
WeierstrassValue weierstrass_p_near_origin(Complex w, const PlaneLattice& lattice);

}  // namespace brodylab
