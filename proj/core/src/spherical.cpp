#include "brodylab/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace brodylab {

double spherical_derivative_sq(const Jet& jet) {
  const double n2 = jet.value.norm2();
  if (n2 == 0.0) throw NumericalError("spherical derivative: lift vanishes (common zero of components)");
  return wedge_norm2(jet.value, jet.deriv) / (kPi * n2 * n2);
}

double spherical_derivative(const HoloCurve& f, Complex z) {
  const Jet jet = f.lift(z);
  const int k = jet.value.argmax_modulus();
  const Complex vk = jet.value[k];
  if (vk == Complex(0.0, 0.0)) throw NumericalError("spherical derivative: lift vanishes (common zero of components)");
  const Complex dvk = jet.deriv[k];
  double F2 = 0.0;
  double dF2 = 0.0;
  double wedge2 = 0.0;
  Complex F[kMaxComponents];
  Complex dF[kMaxComponents];
  int m = 0;
  for (int j = 0; j < jet.value.size(); ++j) {
    if (j == k) continue;
    F[m] = jet.value[j] / vk;
    dF[m] = (jet.deriv[j] * vk - jet.value[j] * dvk) / (vk * vk);
    F2 += std::norm(F[m]);
    dF2 += std::norm(dF[m]);
    ++m;
  }
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) wedge2 += std::norm(F[a] * dF[b] - F[b] * dF[a]);
  }
  return std::sqrt(dF2 + wedge2) / (kSqrtPi * (1.0 + F2));
}

double spherical_derivative_laplacian(const HoloCurve& f, Complex z, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("spherical_derivative_laplacian: h must be positive");
  // Work in the affine chart of the centre's largest coordinate: the chart
  // lift log(1 + |F|^2) has no harmonic part to pollute the stencil error.
  const HomogVec v0 = f.lift(z, z).value;
  const int k = v0.argmax_modulus();
  if (v0[k] == Complex(0.0, 0.0)) throw NumericalError("laplacian stencil: lift vanishes at the centre");
  auto chart_norm2 = [&](const HomogVec& v) {
    if (v[k] == Complex(0.0, 0.0)) throw NumericalError("laplacian stencil crosses a common zero of the components");
    double s = 0.0;
    for (int j = 0; j < v.size(); ++j) s += std::norm(v[j] / v[k]);
    return s;
  };
  const double n0 = chart_norm2(v0);
  double sum = 0.0;
  for (const Complex& d : {Complex(h, 0.0), Complex(-h, 0.0), Complex(0.0, h), Complex(0.0, -h)}) {
    sum += std::log(chart_norm2(f.lift(z + d, z).value) / n0);
  }
  const double lap = sum / (h * h);
  return std::sqrt(std::max(0.0, lap / (4.0 * kPi)));
}

namespace {

struct Scored {
  double value;
  Complex z;
};

void keep_top(std::vector<Scored>& top, int k, double v, Complex z) {
  if (static_cast<int>(top.size()) < k) {
    top.push_back({v, z});
  } else {
    auto worst = std::min_element(top.begin(), top.end(), [](const Scored& a, const Scored& b) { return a.value < b.value; });
    if (v <= worst->value) return;
    *worst = {v, z};
  }
}

}  // namespace

SupResult grid_sup(const std::function<double(Complex)>& g, const Domain& domain, double resolution,
                   const SupOptions& options) {
  const std::vector<Complex> grid = domain.grid_points(resolution);
  if (grid.empty()) throw PreconditionError("grid_sup: empty domain");
  SupResult out;
  out.value = -std::numeric_limits<double>::infinity();
  std::vector<Scored> top;
  for (const Complex& z : grid) {
    const double v = g(z);
    ++out.evaluations;
    if (v > out.value) {
      out.value = v;
      out.argmax = z;
    }
    keep_top(top, options.top, v, z);
  }
  if (domain.kind() == DomainKind::points) return out;

  // Periodic cells admit every point; other shapes clip to the domain.
  const bool clip = domain.kind() != DomainKind::cell;
  double h = resolution;
  if (domain.kind() == DomainKind::cell) {
    const double scale = std::max(std::abs(domain.lattice().w1()), std::abs(domain.lattice().w2()));
    h = scale / std::max(1.0, std::ceil(scale / resolution));
  }
  for (int pass = 0; pass < options.refine_passes; ++pass) {
    const double hf = h / 4.0;
    std::vector<Scored> next;
    for (const Scored& s : top) {
      for (int j = -4; j <= 4; ++j) {
        for (int i = -4; i <= 4; ++i) {
          if (i == 0 && j == 0) continue;
          const Complex z = s.z + Complex(i * hf, j * hf);
          if (clip && domain.signed_distance(z) > 0.0) continue;
          const double v = g(z);
          ++out.evaluations;
          if (v > out.value) {
            out.value = v;
            out.argmax = z;
          }
          keep_top(next, options.top, v, z);
        }
      }
      keep_top(next, options.top, s.value, s.z);
    }
    top = std::move(next);
    h = hf;
  }
  return out;
}

double sup_distance(const HoloCurve& f, const HoloCurve& g, const Domain& A, double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("sup_distance: resolution must be positive");
  auto d = [&](Complex z) { return chordal_distance(f.lift(z).value, g.lift(z).value); };
  return grid_sup(d, A, resolution, {1, 1}).value;
}

namespace {

double midpoint_energy(const HoloCurve& f, const Domain& domain, int n) {
  auto e = [&](Complex z) { return spherical_derivative_sq(f.lift(z)); };
  double total = 0.0;
  switch (domain.kind()) {
    case DomainKind::points:
      return 0.0;
    case DomainKind::disk: {
      // r = R u^2 clusters nodes near the centre, where |df|^2 lives for
      // curves normalized around the origin.
      const double R = domain.radius();
      std::vector<Complex> dirs(n);
      for (int j = 0; j < n; ++j) dirs[j] = std::polar(1.0, 2.0 * kPi * j / n);
      for (int i = 0; i < n; ++i) {
        const double u = (i + 0.5) / n;
        const double r = R * u * u;
        double ring = 0.0;
        for (int j = 0; j < n; ++j) ring += e(domain.center() + r * dirs[j]);
        total += ring * r * 2.0 * R * u;
      }
      return total * (2.0 * kPi / n) / n;
    }
    case DomainKind::square:
    case DomainKind::rect: {
      const double hx = domain.width() / n;
      const double hy = domain.height() / n;
      for (int j = 0; j < n; ++j) {
        double row = 0.0;
        for (int i = 0; i < n; ++i) row += e(domain.corner() + Complex((i + 0.5) * hx, (j + 0.5) * hy));
        total += row;
      }
      return total * hx * hy;
    }
    case DomainKind::cell: {
      const PlaneLattice& L = domain.lattice();
      for (int j = 0; j < n; ++j) {
        double row = 0.0;
        for (int i = 0; i < n; ++i) row += e(domain.corner() + L.point((i + 0.5) / n, (j + 0.5) / n));
        total += row;
      }
      return total * L.cell_area() / (static_cast<double>(n) * n);
    }
    case DomainKind::thickened: {
      const Box b = domain.bbox();
      const double h = std::max(b.width(), b.height()) / n;
      const int nx = static_cast<int>(std::ceil(b.width() / h));
      const int ny = static_cast<int>(std::ceil(b.height() / h));
      for (int j = 0; j < ny; ++j) {
        double row = 0.0;
        for (int i = 0; i < nx; ++i) {
          const Complex z(b.x0 + (i + 0.5) * h, b.y0 + (j + 0.5) * h);
          if (domain.contains(z)) row += e(z);
        }
        total += row;
      }
      return total * h * h;
    }
  }
  return total;
}

}  // namespace

double energy(const HoloCurve& f, const Domain& domain, int quadrature_level, const EnergyOptions& options) {
  if (quadrature_level < 0) throw std::invalid_argument("energy: quadrature_level must be >= 0");
  if (options.base_grid < 2) throw std::invalid_argument("energy: base_grid must be >= 2");
  if (f.is_constant()) return 0.0;
  const int n = options.base_grid << quadrature_level;
  const double coarse = midpoint_energy(f, domain, n);
  const double fine = midpoint_energy(f, domain, 2 * n);
  return std::max(0.0, (4.0 * fine - coarse) / 3.0);
}

namespace {

double max_root_modulus(const HoloCurve& f) {
  double m = 0.0;
  for (const Polynomial& p : f.rational_components()) {
    for (const Complex& r : p.roots()) m = std::max(m, std::abs(r));
    for (const Complex& r : p.derivative().roots()) m = std::max(m, std::abs(r));
  }
  return m;
}

}  // namespace

Domain default_search_box(const HoloCurve& f) {
  if (auto lattice = f.period_lattice()) return Domain::cell(*lattice);
  if (f.kind() == CurveKind::rational) return Domain::disk(0.0, 2.0 * (1.0 + max_root_modulus(f)));
  throw PreconditionError("no default search box for this curve kind; pass one explicitly");
}

double default_resolution(const Domain& box) {
  const Box b = box.bbox();
  return std::max(b.width(), b.height()) / 128.0;
}

double energy_density(const HoloCurve& f, double window, int translate_grid, const DensityOptions& options) {
  if (!(window > 0.0)) throw std::invalid_argument("energy_density: window must be positive");
  if (translate_grid < 1) throw std::invalid_argument("energy_density: translate_grid must be >= 1");
  if (f.is_constant()) return 0.0;
  if (auto lattice = f.period_lattice()) {
    return energy(f, Domain::cell(*lattice), 0, options.quadrature) / lattice->cell_area();
  }
  double span = options.span;
  if (span < 0.0) span = f.kind() == CurveKind::rational ? default_search_box(f).radius() : window;
  double best = 0.0;
  for (int j = 0; j < translate_grid; ++j) {
    for (int i = 0; i < translate_grid; ++i) {
      const double sx = translate_grid == 1 ? 0.0 : -span + 2.0 * span * i / (translate_grid - 1);
      const double sy = translate_grid == 1 ? 0.0 : -span + 2.0 * span * j / (translate_grid - 1);
      const Complex corner = options.center + Complex(sx, sy) - Complex(0.5 * window, 0.5 * window);
      best = std::max(best, energy(f, Domain::square(corner, window), 0, options.quadrature));
    }
  }
  return best / (window * window);
}

SupResult lipschitz_sup(const HoloCurve& f, const Domain& box, double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("lipschitz_sup: resolution must be positive");
  return grid_sup([&](Complex z) { return std::sqrt(spherical_derivative_sq(f.lift(z))); }, box, resolution);
}

Normalization brody_normalize(const HoloCurve& f, const std::optional<Domain>& search_box, double resolution) {
  if (f.is_constant()) throw PreconditionError("no normalization: constant curve");
  const Domain box = search_box ? *search_box : default_search_box(f);
  const double h = resolution > 0.0 ? resolution : default_resolution(box);
  const double lambda = lipschitz_sup(f, box, h).value;
  if (!(lambda > 0.0)) throw PreconditionError("no normalization: |df| vanishes on the search box");
  return {f.rescaled(1.0 / lambda), lambda};
}

NondegeneracyResult is_nondegenerate(const HoloCurve& f, double R, const Domain& lambda, double resolution) {
  if (!(R > 0.0)) throw std::invalid_argument("is_nondegenerate: R must be positive");
  if (!(resolution > 0.0)) throw std::invalid_argument("is_nondegenerate: resolution must be positive");
  NondegeneracyResult out;
  out.threshold = 1.0 / R;
  out.worst_sup = std::numeric_limits<double>::infinity();
  const std::vector<Complex> centers = lambda.grid_points(resolution);
  out.centers = centers.size();
  auto df = [&](Complex z) { return std::sqrt(spherical_derivative_sq(f.lift(z))); };

  // |df| on the aligned grid over bbox(Lambda) grown by R, shared by all centres.
  const double h = resolution;
  const Box b = lambda.bbox().grown(R);
  const long i0 = static_cast<long>(std::floor(b.x0 / h));
  const long j0 = static_cast<long>(std::floor(b.y0 / h));
  const long nx = static_cast<long>(std::ceil(b.x1 / h)) - i0 + 1;
  const long ny = static_cast<long>(std::ceil(b.y1 / h)) - j0 + 1;
  if (static_cast<double>(nx) * static_cast<double>(ny) > 4e7) {
    throw PreconditionError("is_nondegenerate: grid too large; increase resolution");
  }
  std::vector<double> grid(static_cast<std::size_t>(nx * ny));
  for (long j = 0; j < ny; ++j) {
    for (long i = 0; i < nx; ++i) grid[j * nx + i] = df(Complex((i0 + i) * h, (j0 + j) * h));
  }

  const double R2 = R * R;
  for (const Complex& c : centers) {
    std::vector<Scored> top;
    double sup = df(c);
    keep_top(top, 5, sup, c);
    double top_min = -1.0;
    const long jlo = std::max(0L, static_cast<long>(std::ceil((c.imag() - R) / h)) - j0);
    const long jhi = std::min(ny - 1, static_cast<long>(std::floor((c.imag() + R) / h)) - j0);
    for (long j = jlo; j <= jhi; ++j) {
      const double dy = (j0 + j) * h - c.imag();
      const double half = std::sqrt(std::max(0.0, R2 - dy * dy));
      const long ilo = std::max(0L, static_cast<long>(std::ceil((c.real() - half) / h)) - i0);
      const long ihi = std::min(nx - 1, static_cast<long>(std::floor((c.real() + half) / h)) - i0);
      const double* row = grid.data() + j * nx;
      for (long i = ilo; i <= ihi; ++i) {
        if (row[i] > sup) sup = row[i];
        if (row[i] > top_min) {
          keep_top(top, 5, row[i], Complex((i0 + i) * h, (j0 + j) * h));
          if (top.size() == 5) {
            top_min = std::min_element(top.begin(), top.end(), [](const Scored& x, const Scored& y) {
                        return x.value < y.value;
                      })->value;
          }
        }
      }
    }
    if (sup < out.threshold) {
      // Refine only where the coarse grid says the disk fails.
      double hr = h;
      for (int pass = 0; pass < 2 && sup < out.threshold; ++pass) {
        const double hf = hr / 4.0;
        std::vector<Scored> next;
        for (const Scored& s : top) {
          for (int dj = -4; dj <= 4; ++dj) {
            for (int di = -4; di <= 4; ++di) {
              const Complex z = s.z + Complex(di * hf, dj * hf);
              if (std::norm(z - c) > R2) continue;
              const double v = df(z);
              sup = std::max(sup, v);
              keep_top(next, 5, v, z);
            }
          }
        }
        top = std::move(next);
        hr = hf;
      }
    }
    if (sup < out.threshold) ++out.failing;
    if (sup < out.worst_sup) {
      out.worst_sup = sup;
      out.worst_center = c;
    }
  }
  out.ok = out.failing == 0;
  return out;
}

}  // namespace brodylab
