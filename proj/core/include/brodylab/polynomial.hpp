#pragma once

#include <vector>

#include "brodylab/types.hpp"

namespace brodylab {

/// Univariate complex polynomial, coefficients in ascending degree order.
/// Trailing zero coefficients are trimmed on construction.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);
  Polynomial(std::initializer_list<Complex> coeffs) : Polynomial(std::vector<Complex>(coeffs)) {}

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  Complex operator()(Complex z) const;
  /// Value and first derivative by Horner's scheme.
  void eval(Complex z, Complex& value, Complex& deriv) const;

  Polynomial derivative() const;
  /// Roots via eigenvalues of the companion matrix.
  std::vector<Complex> roots() const;

  /// Coefficient-wise max modulus; scale for relative tolerances.
  double max_coeff() const;

 private:
  std::vector<Complex> coeffs_;
};

/// True when all polynomials vanish simultaneously at some point, i.e. they
/// share a nonconstant common factor (up to the relative tolerance).
bool have_common_root(const std::vector<Polynomial>& polys, double rel_tol = 1e-7);

}  // namespace brodylab
