#include "brodylab/folner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "brodylab/rng.hpp"
#include "brodylab/spherical.hpp"

namespace brodylab {

double folner_boundary_ratio(const Domain& omega, double r, double resolution) {
  if (!(r > 0.0)) throw std::invalid_argument("folner_boundary_ratio: r must be positive");
  const double area = omega.area();
  if (!(area > 0.0)) throw std::invalid_argument("folner_boundary_ratio: domain has zero area");
  const double h = resolution > 0.0 ? resolution : r / 8.0;
  const Box b = omega.bbox().grown(r);
  const long nx = static_cast<long>(std::ceil(b.width() / h));
  const long ny = static_cast<long>(std::ceil(b.height() / h));
  long strip = 0;
  for (long j = 0; j < ny; ++j) {
    for (long i = 0; i < nx; ++i) {
      const Complex a(b.x0 + (i + 0.5) * h, b.y0 + (j + 0.5) * h);
      if (std::abs(omega.signed_distance(a)) <= r) ++strip;
    }
  }
  return static_cast<double>(strip) * h * h / area;
}

namespace {

bool nested(const Domain& a, const Domain& b) {
  if (a.kind() == DomainKind::disk && b.kind() == DomainKind::disk) {
    return std::abs(a.center() - b.center()) + a.radius() <= b.radius();
  }
  const bool boxy_a = a.kind() == DomainKind::square || a.kind() == DomainKind::rect;
  const bool boxy_b = b.kind() == DomainKind::square || b.kind() == DomainKind::rect;
  if (!boxy_a || !boxy_b) return false;
  const Box p = a.bbox();
  const Box q = b.bbox();
  return p.x0 >= q.x0 && p.y0 >= q.y0 && p.x1 <= q.x1 && p.y1 <= q.y1;
}

bool within(double lhs, double rhs, double tol) { return lhs <= rhs + tol * std::max(std::abs(rhs), 1e-300); }

}  // namespace

OrnsteinWeissTrace ornstein_weiss_trace(const WindowFunctional& h, const std::vector<Domain>& windows,
                                        std::uint64_t seed, double tol) {
  if (windows.empty()) throw std::invalid_argument("ornstein_weiss_trace: no windows");
  OrnsteinWeissTrace out;
  std::vector<double> hv;
  for (const Domain& w : windows) {
    const double area = w.area();
    if (!(area > 0.0)) throw std::invalid_argument("ornstein_weiss_trace: window has zero area");
    hv.push_back(h(w));
    out.values.push_back(hv.back() / area);
    out.areas.push_back(area);
  }

  for (std::size_t i = 0; i + 1 < windows.size(); ++i) {
    if (!nested(windows[i], windows[i + 1])) continue;
    ++out.spot_checks;
    if (!within(hv[i], hv[i + 1], tol)) {
      throw NumericalError("ornstein_weiss_trace: monotonicity violated between windows " + std::to_string(i) +
                           " and " + std::to_string(i + 1));
    }
  }

  const Domain& first = windows.front();
  const Box b = first.bbox();
  const double half = 0.5 * b.width();
  const Domain left = Domain::rect({b.x0, b.y0}, half, b.height());
  const Domain right = Domain::rect({b.x0 + half, b.y0}, half, b.height());
  ++out.spot_checks;
  if (!within(hv[0], h(left) + h(right), tol)) {
    throw NumericalError("ornstein_weiss_trace: subadditivity violated on the split of window 0");
  }

  Rng rng(seed);
  for (int s = 0; s < 2; ++s) {
    const Complex a(rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0));
    const double shifted = h(first.translated(a));
    ++out.spot_checks;
    if (std::abs(shifted - hv[0]) > tol * std::max(std::abs(hv[0]), 1e-300)) {
      throw NumericalError("ornstein_weiss_trace: translation invariance violated for window 0");
    }
  }

  const std::size_t n = out.values.size();
  const std::size_t k = std::min<std::size_t>(3, n);
  const auto [lo, hi] = std::minmax_element(out.values.end() - static_cast<long>(k), out.values.end());
  const double last = out.values.back();
  out.spread = last != 0.0 ? (*hi - *lo) / std::abs(last) : 0.0;
  if (n >= 2 && last != 0.0) out.last_step = std::abs(last - out.values[n - 2]) / std::abs(last);
  return out;
}

PeriodicEnergyFunctional::PeriodicEnergyFunctional(const HoloCurve& f, int m, int translate_grid)
    : m_(m), translate_grid_(translate_grid) {
  const auto lattice = f.period_lattice();
  if (!lattice) throw PreconditionError("PeriodicEnergyFunctional: curve is not doubly periodic");
  if (m < 8 || translate_grid < 1 || m % translate_grid != 0) {
    throw std::invalid_argument("PeriodicEnergyFunctional: need m >= 8 divisible by translate_grid");
  }
  lattice_ = *lattice;
  h_ = lattice_.cell_area() / (static_cast<double>(m) * m);
  table_.resize(static_cast<std::size_t>(m) * m);
  double sum = 0.0;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const Complex z = lattice_.point((i + 0.5) / m, (j + 0.5) / m);
      const double v = spherical_derivative_sq(f.lift(z));
      table_[static_cast<std::size_t>(j) * m + i] = v;
      sum += v;
    }
  }
  cell_mean_ = sum / (static_cast<double>(m) * m);
}

double PeriodicEnergyFunctional::operator()(const Domain& omega) const {
  // Integration nodes are the lattice midpoints ((k + 1/2)/m) w1 + ((l + 1/2)/m) w2,
  // so every node reads a table entry exactly; h_ is the area per node. Shifts
  // are taken relative to the window's own corner, which makes the estimate
  // exactly invariant under translating the window.
  const Box b0 = omega.bbox();
  const Complex anchor(b0.x0, b0.y0);
  const Domain moved = omega.translated(-anchor);
  const Box b = moved.bbox();
  double best = -std::numeric_limits<double>::infinity();
  for (int tj = 0; tj < translate_grid_; ++tj) {
    for (int ti = 0; ti < translate_grid_; ++ti) {
      const int si = ti * (m_ / translate_grid_);
      const int sj = tj * (m_ / translate_grid_);
      const Complex shift = lattice_.point(static_cast<double>(si) / m_, static_cast<double>(sj) / m_);
      double s0 = std::numeric_limits<double>::infinity(), s1 = -s0;
      double t0 = s0, t1 = -s0;
      for (const Complex c : {Complex(b.x0, b.y0), Complex(b.x1, b.y0), Complex(b.x0, b.y1), Complex(b.x1, b.y1)}) {
        double s = 0.0;
        double t = 0.0;
        lattice_.coordinates(c + shift, s, t);
        s0 = std::min(s0, s);
        s1 = std::max(s1, s);
        t0 = std::min(t0, t);
        t1 = std::max(t1, t);
      }
      const long k0 = static_cast<long>(std::floor(s0 * m_ - 0.5)) - 1;
      const long k1 = static_cast<long>(std::ceil(s1 * m_ - 0.5)) + 1;
      const long l0 = static_cast<long>(std::floor(t0 * m_ - 0.5)) - 1;
      const long l1 = static_cast<long>(std::ceil(t1 * m_ - 0.5)) + 1;
      double sum = 0.0;
      for (long l = l0; l <= l1; ++l) {
        const long lm = ((l % m_) + m_) % m_;
        for (long k = k0; k <= k1; ++k) {
          const Complex z = lattice_.point((k + 0.5) / m_, (l + 0.5) / m_) - shift;
          if (!moved.contains(z)) continue;
          sum += table_[static_cast<std::size_t>(lm) * m_ + static_cast<std::size_t>(((k % m_) + m_) % m_)];
        }
      }
      best = std::max(best, sum * h_);
    }
  }
  return best;
}

}  // namespace brodylab
