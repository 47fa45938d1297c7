#include "brodylab/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace brodylab {

namespace {

double segment_distance(Complex z, Complex a, Complex b) {
  const Complex ab = b - a;
  const double t = std::clamp(((z - a) * std::conj(ab)).real() / std::norm(ab), 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

double box_signed_distance(Complex z, double x0, double y0, double x1, double y1) {
  const double dx = std::max(x0 - z.real(), z.real() - x1);
  const double dy = std::max(y0 - z.imag(), z.imag() - y1);
  if (dx <= 0.0 && dy <= 0.0) return std::max(dx, dy);
  return std::hypot(std::max(dx, 0.0), std::max(dy, 0.0));
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string("Domain: ") + what + " must be positive");
}

}  // namespace

Domain Domain::disk(Complex center, double radius) {
  require_positive(radius, "radius");
  Domain d;
  d.kind_ = DomainKind::disk;
  d.a_ = center;
  d.r_ = radius;
  return d;
}

Domain Domain::square(Complex corner, double side) {
  require_positive(side, "side");
  Domain d;
  d.kind_ = DomainKind::square;
  d.a_ = corner;
  d.w_ = side;
  d.h_ = side;
  return d;
}

Domain Domain::rect(Complex corner, double width, double height) {
  require_positive(width, "width");
  require_positive(height, "height");
  Domain d;
  d.kind_ = DomainKind::rect;
  d.a_ = corner;
  d.w_ = width;
  d.h_ = height;
  return d;
}

Domain Domain::cell(const PlaneLattice& lattice, Complex origin) {
  Domain d;
  d.kind_ = DomainKind::cell;
  d.lattice_ = lattice;
  d.a_ = origin;
  return d;
}

Domain Domain::thickened(std::vector<Complex> centers, double r) {
  require_positive(r, "radius");
  if (centers.empty()) throw std::invalid_argument("Domain: thickened set needs at least one center");
  Domain d;
  d.kind_ = DomainKind::thickened;
  d.pts_ = std::move(centers);
  d.r_ = r;
  return d;
}

Domain Domain::points(std::vector<Complex> pts) {
  if (pts.empty()) throw std::invalid_argument("Domain: empty point set");
  Domain d;
  d.kind_ = DomainKind::points;
  d.pts_ = std::move(pts);
  return d;
}

bool Domain::contains(Complex z) const {
  switch (kind_) {
    case DomainKind::disk:
      return std::abs(z - a_) <= r_;
    case DomainKind::square:
    case DomainKind::rect: {
      const Complex u = z - a_;
      return u.real() >= 0.0 && u.real() <= w_ && u.imag() >= 0.0 && u.imag() <= h_;
    }
    case DomainKind::cell: {
      double s = 0.0;
      double t = 0.0;
      lattice_.coordinates(z - a_, s, t);
      return s >= 0.0 && s < 1.0 && t >= 0.0 && t < 1.0;
    }
    case DomainKind::thickened:
      for (const Complex& c : pts_) {
        if (std::abs(z - c) <= r_) return true;
      }
      return false;
    case DomainKind::points:
      return std::find(pts_.begin(), pts_.end(), z) != pts_.end();
  }
  return false;
}

Box Domain::bbox() const {
  switch (kind_) {
    case DomainKind::disk:
      return {a_.real() - r_, a_.imag() - r_, a_.real() + r_, a_.imag() + r_};
    case DomainKind::square:
    case DomainKind::rect:
      return {a_.real(), a_.imag(), a_.real() + w_, a_.imag() + h_};
    case DomainKind::cell: {
      Box b{a_.real(), a_.imag(), a_.real(), a_.imag()};
      for (const Complex& v : {lattice_.w1(), lattice_.w2(), lattice_.w1() + lattice_.w2()}) {
        const Complex p = a_ + v;
        b.x0 = std::min(b.x0, p.real());
        b.y0 = std::min(b.y0, p.imag());
        b.x1 = std::max(b.x1, p.real());
        b.y1 = std::max(b.y1, p.imag());
      }
      return b;
    }
    case DomainKind::thickened:
    case DomainKind::points: {
      const double inf = std::numeric_limits<double>::infinity();
      Box b{inf, inf, -inf, -inf};
      for (const Complex& c : pts_) {
        b.x0 = std::min(b.x0, c.real() - r_);
        b.y0 = std::min(b.y0, c.imag() - r_);
        b.x1 = std::max(b.x1, c.real() + r_);
        b.y1 = std::max(b.y1, c.imag() + r_);
      }
      return b;
    }
  }
  return {};
}

double Domain::area() const {
  switch (kind_) {
    case DomainKind::disk:
      return kPi * r_ * r_;
    case DomainKind::square:
    case DomainKind::rect:
      return w_ * h_;
    case DomainKind::cell:
      return lattice_.cell_area();
    case DomainKind::points:
      return 0.0;
    case DomainKind::thickened: {
      if (pts_.size() == 1) return kPi * r_ * r_;
      const Box b = bbox();
      const double h = r_ / 64.0;
      const long nx = static_cast<long>(std::ceil(b.width() / h));
      const long ny = static_cast<long>(std::ceil(b.height() / h));
      long inside = 0;
      for (long j = 0; j < ny; ++j) {
        for (long i = 0; i < nx; ++i) {
          if (contains({b.x0 + (i + 0.5) * h, b.y0 + (j + 0.5) * h})) ++inside;
        }
      }
      return static_cast<double>(inside) * h * h;
    }
  }
  return 0.0;
}

double Domain::signed_distance(Complex z) const {
  switch (kind_) {
    case DomainKind::disk:
      return std::abs(z - a_) - r_;
    case DomainKind::square:
    case DomainKind::rect:
      return box_signed_distance(z, a_.real(), a_.imag(), a_.real() + w_, a_.imag() + h_);
    case DomainKind::cell: {
      const Complex v0 = a_;
      const Complex v1 = a_ + lattice_.w1();
      const Complex v2 = a_ + lattice_.w1() + lattice_.w2();
      const Complex v3 = a_ + lattice_.w2();
      const double d = std::min({segment_distance(z, v0, v1), segment_distance(z, v1, v2),
                                 segment_distance(z, v2, v3), segment_distance(z, v3, v0)});
      double s = 0.0;
      double t = 0.0;
      lattice_.coordinates(z - a_, s, t);
      const bool inside = s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0;
      return inside ? -d : d;
    }
    case DomainKind::thickened: {
      double d = std::numeric_limits<double>::infinity();
      for (const Complex& c : pts_) d = std::min(d, std::abs(z - c));
      return d - r_;
    }
    case DomainKind::points: {
      double d = std::numeric_limits<double>::infinity();
      for (const Complex& c : pts_) d = std::min(d, std::abs(z - c));
      return d;
    }
  }
  return 0.0;
}

std::vector<Complex> Domain::grid_points(double h) const {
  require_positive(h, "grid spacing");
  std::vector<Complex> out;
  if (kind_ == DomainKind::points) return pts_;
  if (kind_ == DomainKind::cell) {
    const double scale = std::max(std::abs(lattice_.w1()), std::abs(lattice_.w2()));
    const int n = std::max(1, static_cast<int>(std::ceil(scale / h)));
    out.reserve(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) out.push_back(a_ + lattice_.point(static_cast<double>(i) / n, static_cast<double>(j) / n));
    }
    return out;
  }
  const Box b = bbox();
  const long i0 = static_cast<long>(std::ceil(b.x0 / h - 1e-9));
  const long i1 = static_cast<long>(std::floor(b.x1 / h + 1e-9));
  const long j0 = static_cast<long>(std::ceil(b.y0 / h - 1e-9));
  const long j1 = static_cast<long>(std::floor(b.y1 / h + 1e-9));
  for (long j = j0; j <= j1; ++j) {
    for (long i = i0; i <= i1; ++i) {
      const Complex z(i * h, j * h);
      if (signed_distance(z) <= 1e-9 * h) out.push_back(z);
    }
  }
  if (out.empty()) {
    switch (kind_) {
      case DomainKind::disk: out.push_back(a_); break;
      case DomainKind::thickened: out.push_back(pts_.front()); break;
      default: out.push_back(a_ + Complex(0.5 * w_, 0.5 * h_)); break;
    }
  }
  return out;
}

Domain Domain::translated(Complex a) const {
  Domain d = *this;
  d.a_ += a;
  for (Complex& c : d.pts_) c += a;
  return d;
}

std::string Domain::describe() const {
  std::ostringstream out;
  out.precision(10);
  auto c = [&](Complex z) { out << '(' << z.real() << ',' << z.imag() << ')'; };
  switch (kind_) {
    case DomainKind::disk: out << "disk center="; c(a_); out << " r=" << r_; break;
    case DomainKind::square: out << "square corner="; c(a_); out << " side=" << w_; break;
    case DomainKind::rect: out << "rect corner="; c(a_); out << " w=" << w_ << " h=" << h_; break;
    case DomainKind::cell: out << "cell origin="; c(a_); out << " w1="; c(lattice_.w1()); out << " w2="; c(lattice_.w2()); break;
    case DomainKind::thickened: out << "thickened centers=" << pts_.size() << " r=" << r_; break;
    case DomainKind::points: out << "points n=" << pts_.size(); break;
  }
  return out.str();
}

}  // namespace brodylab
