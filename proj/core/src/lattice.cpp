#include "brodylab/lattice.hpp"

#include <cmath>
#include <limits>

namespace brodylab {
namespace {

constexpr Complex kI{0.0, 1.0};

// Sum_{n>=1} n^k q^n / (1 - q^n) until terms drop below 1e-18.
Complex lambert_sum(Complex q, int power) {
  Complex total = 0.0;
  Complex qn = q;
  for (int n = 1; n < 200; ++n) {
    const Complex term = std::pow(static_cast<double>(n), power) * qn / (1.0 - qn);
    total += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(total))) break;
    qn *= q;
  }
  return total;
}

}  // namespace

PlaneLattice::PlaneLattice(Complex w1, Complex w2) : w1_(w1), w2_(w2) {
  if (std::abs(w1) == 0.0 || !((w2 / w1).imag() > 0.0)) {
    throw std::invalid_argument("PlaneLattice: generators must satisfy Im(w2/w1) > 0");
  }
  r1_ = w1;
  r2_ = w2;
  for (int iter = 0; iter < 256; ++iter) {
    const double m = std::round((r2_ / r1_).real());
    r2_ -= m * r1_;
    if (std::abs(r2_) < std::abs(r1_) * (1.0 - 1e-15)) {
      const Complex old1 = r1_;
      r1_ = r2_;
      r2_ = -old1;
    } else {
      break;
    }
  }
  tau_ = r2_ / r1_;

  const Complex q = std::exp(2.0 * kPi * kI * tau_);
  const Complex e4 = 1.0 + 240.0 * lambert_sum(q, 3);
  const Complex e6 = 1.0 - 504.0 * lambert_sum(q, 5);
  const Complex k = 2.0 * kPi / r1_;
  const Complex k2 = k * k;
  g2_ = k2 * k2 * e4 / 12.0;
  g3_ = k2 * k2 * k2 * e6 / 216.0;
}

void PlaneLattice::coordinates(Complex z, double& s, double& t) const {
  const Complex ratio = w2_ / w1_;
  const Complex u = z / w1_;
  t = u.imag() / ratio.imag();
  s = u.real() - t * ratio.real();
}

Complex PlaneLattice::nearest_point(Complex z) const {
  const Complex u = z / r1_;
  const double b = u.imag() / tau_.imag();
  const double a = u.real() - b * tau_.real();
  const double a0 = std::round(a);
  const double b0 = std::round(b);
  Complex best = a0 * r1_ + b0 * r2_;
  double best_d = std::abs(z - best);
  for (int da = -1; da <= 1; ++da) {
    for (int db = -1; db <= 1; ++db) {
      const Complex cand = (a0 + da) * r1_ + (b0 + db) * r2_;
      const double d = std::abs(z - cand);
      if (d < best_d) {
        best_d = d;
        best = cand;
      }
    }
  }
  return best;
}

bool PlaneLattice::contains_vector(Complex v, double rel_tol) const {
  double s = 0.0;
  double t = 0.0;
  coordinates(v, s, t);
  return std::abs(s - std::round(s)) < rel_tol * std::max(1.0, std::abs(s)) &&
         std::abs(t - std::round(t)) < rel_tol * std::max(1.0, std::abs(t));
}

bool PlaneLattice::contains_lattice(const PlaneLattice& other, double rel_tol) const {
  return contains_vector(other.w1(), rel_tol) && contains_vector(other.w2(), rel_tol);
}

WeierstrassValue weierstrass_p_near_origin(Complex w, const PlaneLattice& lattice) {
  const Complex r1 = lattice.reduced_w1();
  const Complex tau = lattice.reduced_tau();
  const Complex u = w / r1;
  const Complex q = std::exp(2.0 * kPi * kI * tau);
  const Complex ex = std::exp(2.0 * kPi * kI * u);
  const Complex ey = 1.0 / ex;
  const double pi2 = kPi * kPi;
  const double pi3 = pi2 * kPi;

  const Complex s = std::sin(kPi * u);
  const Complex c = std::cos(kPi * u);
  Complex value = pi2 / (s * s);
  Complex deriv = -2.0 * pi3 * c / (s * s * s);
  Complex g = pi2 / 3.0;

  Complex qm = q;
  const double growth = std::max(std::abs(ex), std::abs(ey));
  for (int m = 1; m < 400; ++m) {
    const Complex x = ex * qm;
    const Complex y = ey * qm;
    const Complex ox = 1.0 - x;
    const Complex oy = 1.0 - y;
    value += -4.0 * pi2 * x / (ox * ox) - 4.0 * pi2 * y / (oy * oy);
    deriv += -8.0 * pi3 * kI * x * (1.0 + x) / (ox * ox * ox) + 8.0 * pi3 * kI * y * (1.0 + y) / (oy * oy * oy);
    const Complex oq = 1.0 - qm;
    g += -8.0 * pi2 * qm / (oq * oq);
    if (std::abs(qm) * growth < 1e-18) break;
    qm *= q;
  }
  value -= g;
  const Complex r2 = r1 * r1;
  return {value / r2, deriv / (r2 * r1)};
}

WeierstrassValue weierstrass_p(Complex z, const PlaneLattice& lattice) {
  const Complex w = z - lattice.nearest_point(z);
  if (std::abs(w) < 1e-12 * std::abs(lattice.reduced_w1())) {
    throw PreconditionError("weierstrass_p: pole (z is a lattice point)");
  }
  return weierstrass_p_near_origin(w, lattice);
}

}  // namespace brodylab
