#include "brodylab/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

namespace brodylab {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex(0.0, 0.0)) coeffs_.pop_back();
}

Complex Polynomial::operator()(Complex z) const {
  Complex v = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * z + *it;
  return v;
}

void Polynomial::eval(Complex z, Complex& value, Complex& deriv) const {
  value = 0.0;
  deriv = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    deriv = deriv * z + value;
    value = value * z + *it;
  }
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

std::vector<Complex> Polynomial::roots() const {
  const int n = degree();
  if (n < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  const Complex lead = coeffs_.back();
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs_[i] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> out(n);
  for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()(i);
  // One Newton polish step per root.
  for (Complex& r : out) {
    Complex v, d;
    eval(r, v, d);
    if (std::abs(d) > 0.0) r -= v / d;
  }
  return out;
}

double Polynomial::max_coeff() const {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

bool have_common_root(const std::vector<Polynomial>& polys, double rel_tol) {
  const Polynomial* pivot = nullptr;
  for (const Polynomial& p : polys) {
    if (p.is_zero()) continue;
    if (p.degree() == 0) return false;
    if (!pivot || p.degree() < pivot->degree()) pivot = &p;
  }
  if (!pivot) return false;
  for (const Complex& r : pivot->roots()) {
    bool all_vanish = true;
    for (const Polynomial& p : polys) {
      if (p.is_zero()) continue;
      const double s = p.max_coeff() * std::max(1.0, std::pow(std::abs(r), p.degree()));
      if (std::abs(p(r)) > rel_tol * s) {
        all_vanish = false;
        break;
      }
    }
    if (all_vanish) return true;
  }
  return false;
}

}  // namespace brodylab
