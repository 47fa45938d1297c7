#include "brodylab/scalar_field.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace brodylab {

namespace {

void check_size(int nx, int ny) {
  if (nx < 8 || ny < 8) throw std::invalid_argument("ScalarField: need at least 8 samples per axis");
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ScalarField ScalarField::torus(const PlaneLattice& lattice, int nx, int ny) {
  check_size(nx, ny);
  ScalarField f;
  f.torus_ = true;
  f.lattice_ = lattice;
  f.nx_ = nx;
  f.ny_ = ny;
  f.values_.assign(static_cast<std::size_t>(nx) * ny, 0.0);
  return f;
}

ScalarField ScalarField::rectangle(Complex corner, double spacing, int nx, int ny) {
  check_size(nx, ny);
  if (!(spacing > 0.0)) throw std::invalid_argument("ScalarField: spacing must be positive");
  ScalarField f;
  f.corner_ = corner;
  f.h_ = spacing;
  f.nx_ = nx;
  f.ny_ = ny;
  f.values_.assign(static_cast<std::size_t>(nx) * ny, 0.0);
  return f;
}

double ScalarField::spacing() const { return torus_ ? std::abs(lattice_.w1()) / nx_ : h_; }

Complex ScalarField::point(int i, int j) const {
  if (torus_) return corner_ + lattice_.point(static_cast<double>(i) / nx_, static_cast<double>(j) / ny_);
  return corner_ + Complex(i * h_, j * h_);
}

double ScalarField::sample_area() const {
  return torus_ ? lattice_.cell_area() / (static_cast<double>(nx_) * ny_) : h_ * h_;
}

void ScalarField::fill(const std::function<double(Complex)>& g) {
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) at(i, j) = g(point(i, j));
  }
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

double ScalarField::integral() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) * sample_area();
}

void ScalarField::write_text(std::ostream& out) const {
  if (torus_) {
    out << "scalar-field torus " << num(lattice_.w1().real()) << ' ' << num(lattice_.w1().imag()) << ' '
        << num(lattice_.w2().real()) << ' ' << num(lattice_.w2().imag());
  } else {
    out << "scalar-field rectangle " << num(corner_.real()) << ' ' << num(corner_.imag()) << ' ' << num(h_);
  }
  out << ' ' << nx_ << ' ' << ny_ << "\n";
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) out << (i ? " " : "") << num(at(i, j));
    out << "\n";
  }
}

ScalarField ScalarField::read_text(std::istream& in) {
  std::string magic;
  std::string geom;
  in >> magic >> geom;
  if (magic != "scalar-field") throw std::runtime_error("ScalarField: bad header");
  ScalarField f;
  if (geom == "torus") {
    double a, b, c, d;
    int nx, ny;
    in >> a >> b >> c >> d >> nx >> ny;
    if (!in) throw std::runtime_error("ScalarField: bad torus header");
    f = torus(PlaneLattice({a, b}, {c, d}), nx, ny);
  } else if (geom == "rectangle") {
    double a, b, h;
    int nx, ny;
    in >> a >> b >> h >> nx >> ny;
    if (!in) throw std::runtime_error("ScalarField: bad rectangle header");
    f = rectangle({a, b}, h, nx, ny);
  } else {
    throw std::runtime_error("ScalarField: unknown geometry '" + geom + "'");
  }
  for (double& v : f.values_) {
    if (!(in >> v)) throw std::runtime_error("ScalarField: truncated data");
  }
  return f;
}

void ScalarField::write_csv(std::ostream& out) const {
  out << "x,y,value\n";
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      const Complex z = point(i, j);
      out << num(z.real()) << ',' << num(z.imag()) << ',' << num(at(i, j)) << "\n";
    }
  }
}

}  // namespace brodylab
