#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "brodylab/lattice.hpp"
#include "brodylab/polynomial.hpp"
#include "brodylab/projective.hpp"

namespace brodylab {

/// A homogeneous lift and its z-derivative at one point.
struct Jet {
  HomogVec value;
  HomogVec deriv;
};

/// Coefficients c[i][j] of the monomials wp^i (wp')^j, i <= 3, j <= 1.
using EllipticComponent = std::array<std::array<Complex, 2>, 4>;

/// Pole order of wp^i (wp')^j at a lattice point.
inline int elliptic_pole_order(int i, int j) { return 2 * i + 3 * j; }

enum class CurveKind { rational, elliptic, transformed, bubbled };

/// Holomorphic map C -> CP^N, evaluated through homogeneous lifts.
///
/// A lift is only meaningful up to a nowhere-vanishing holomorphic factor, so
/// lift(z, anchor) returns a lift that is holomorphic on a neighbourhood of
/// `anchor` (roughly half a period cell for elliptic curves). Stencils and
/// local derivatives must share one anchor.
class HoloCurve {
 public:
  HoloCurve() = default;

  /// Throws PreconditionError when the components share a common root or
  /// are all zero, std::invalid_argument on a bad component count.
  static HoloCurve rational(std::vector<Polynomial> components);
  static HoloCurve constant(const HomogVec& point);
  /// Components are polynomial in (wp, wp') of `lattice`.
  static HoloCurve elliptic(const PlaneLattice& lattice, std::vector<EllipticComponent> components);

  /// z -> this(alpha z + beta). Throws std::invalid_argument if alpha == 0.
  HoloCurve transformed(Complex alpha, Complex beta) const;
  HoloCurve translated(Complex a) const { return transformed(1.0, a); }
  HoloCurve rescaled(Complex lambda) const { return transformed(lambda, 0.0); }

  /// Glue the bubble a/(z-p)^3 onto every non-q coordinate of the chart
  /// centred at q (a unitary reflection sends q to [1:0:...:0]).
  HoloCurve bubbled(Complex p, const HomogVec& q, double a) const;

  bool valid() const { return node_ != nullptr; }
  int dim() const;
  CurveKind kind() const;
  bool is_constant() const;
  /// Period lattice of elliptic curves and their affine transforms.
  std::optional<PlaneLattice> period_lattice() const;

  Jet lift(Complex z, Complex anchor) const;
  Jet lift(Complex z) const { return lift(z, z); }
  ProjectivePoint operator()(Complex z) const { return ProjectivePoint(lift(z).value); }

  // Structural access for serialization and diagnostics.
  const std::vector<Polynomial>& rational_components() const;
  const PlaneLattice& elliptic_lattice() const;
  const std::vector<EllipticComponent>& elliptic_components() const;
  const HoloCurve& base() const;
  Complex alpha() const;
  Complex beta() const;
  Complex bubble_center() const;
  const HomogVec& bubble_target() const;
  double bubble_constant() const;
  /// Number of nested bubbled layers.
  int bubble_count() const;

  struct Node;

 private:
  explicit HoloCurve(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const Node& node() const;
  std::shared_ptr<const Node> node_;
};

/// Householder reflection H (Hermitian, unitary) with H q = alpha e0, |alpha| = |q|.
class ChartReflection {
 public:
  ChartReflection() = default;
  explicit ChartReflection(const HomogVec& q);
  HomogVec apply(const HomogVec& x) const;

 private:
  HomogVec v_;
  double vv_ = 0.0;
};

}  // namespace brodylab
