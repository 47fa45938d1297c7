#include "brodylab/curvature.hpp"

#include <cmath>

#include "brodylab/spherical.hpp"

namespace brodylab {

ScalarField curvature_field(const HoloCurve& f, const Domain& cell, double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("curvature_field: resolution must be positive");
  const double factor = kPi * (f.dim() + 1);
  auto trace = [&](Complex z) { return factor * spherical_derivative_sq(f.lift(z)); };
  if (cell.kind() == DomainKind::cell) {
    const PlaneLattice& L = cell.lattice();
    const int nx = std::max(8, static_cast<int>(std::ceil(std::abs(L.w1()) / resolution)));
    const int ny = std::max(8, static_cast<int>(std::ceil(std::abs(L.w2()) / resolution)));
    ScalarField out = ScalarField::torus(L, nx, ny);
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) out.at(i, j) = trace(cell.corner() + out.point(i, j));
    }
    return out;
  }
  if (cell.kind() == DomainKind::square || cell.kind() == DomainKind::rect) {
    const int nx = std::max(8, static_cast<int>(std::ceil(cell.width() / resolution)) + 1);
    const int ny = std::max(8, static_cast<int>(std::ceil(cell.height() / resolution)) + 1);
    const double h = std::max(cell.width() / (nx - 1), cell.height() / (ny - 1));
    ScalarField out = ScalarField::rectangle(cell.corner(), h, nx, ny);
    out.fill(trace);
    return out;
  }
  throw std::invalid_argument("curvature_field: domain must be a cell, square or rectangle");
}

double chern_integral(const HoloCurve& f, const PlaneLattice& gamma, int base_grid) {
  const auto periods = f.period_lattice();
  if (!periods) throw PreconditionError("chern_integral: curve is not doubly periodic");
  if (!periods->contains_lattice(gamma, 1e-9)) {
    throw PreconditionError("chern_integral: curve is not periodic over the given lattice");
  }
  return (f.dim() + 1) * energy(f, Domain::cell(gamma), 0, {base_grid});
}

std::vector<Complex> select_sampling_points(const Domain& square, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("select_sampling_points: delta must be positive");
  if (square.kind() != DomainKind::square && square.kind() != DomainKind::rect) {
    throw std::invalid_argument("select_sampling_points: domain must be a square");
  }
  const int mx = static_cast<int>(std::ceil(square.width() / delta - 1e-12));
  const int my = static_cast<int>(std::ceil(square.height() / delta - 1e-12));
  std::vector<Complex> pts;
  pts.reserve(static_cast<std::size_t>(mx) * my);
  for (int j = 0; j < my; ++j) {
    for (int i = 0; i < mx; ++i) {
      pts.push_back(square.corner() + Complex((i + 0.5) * square.width() / mx, (j + 0.5) * square.height() / my));
    }
  }
  return pts;
}

}  // namespace brodylab
