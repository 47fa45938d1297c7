#include "brodylab/helmholtz.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>
#include <vector>

namespace brodylab {

namespace {

struct FftBuffer {
  explicit FftBuffer(std::size_t n) : data(fftw_alloc_complex(n)), size(n) {
    if (!data) throw std::bad_alloc();
  }
  ~FftBuffer() { fftw_free(data); }
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;
  fftw_complex* data;
  std::size_t size;
};

// Planning is not thread-safe in FFTW; execution on fresh buffers is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& kv : plans_) fftw_destroy_plan(kv.second);
  }
  fftw_plan get(int nx, int ny, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_tuple(nx, ny, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    FftBuffer a(static_cast<std::size_t>(nx) * ny);
    FftBuffer b(static_cast<std::size_t>(nx) * ny);
    fftw_plan plan = fftw_plan_dft_2d(ny, nx, a.data, b.data, sign, FFTW_ESTIMATE);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void require_torus(const ScalarField& f, const char* who) {
  if (!f.is_torus()) throw PreconditionError(std::string(who) + ": field must live on a torus");
}

// Dual basis b1, b2 (as complex numbers) with Re(b_i conj(w_j)) = delta_ij.
void dual_basis(const PlaneLattice& L, Complex& b1, Complex& b2) {
  const double a = L.w1().real(), b = L.w1().imag(), c = L.w2().real(), d = L.w2().imag();
  const double det = a * d - b * c;
  b1 = Complex(d / det, -c / det);
  b2 = Complex(-b / det, a / det);
}

int signed_freq(int p, int n) { return p <= n / 2 ? p : p - n; }
bool nyquist(int p, int n) { return n % 2 == 0 && p == n / 2; }

struct Spectrum {
  int nx, ny;
  std::unique_ptr<FftBuffer> buf;
};

Spectrum forward(const ScalarField& f) {
  const int nx = f.nx(), ny = f.ny();
  Spectrum s{nx, ny, std::make_unique<FftBuffer>(static_cast<std::size_t>(nx) * ny)};
  FftBuffer in(static_cast<std::size_t>(nx) * ny);
  for (std::size_t k = 0; k < in.size; ++k) {
    in.data[k][0] = f.values()[k];
    in.data[k][1] = 0.0;
  }
  fftw_execute_dft(plan_cache().get(nx, ny, FFTW_FORWARD), in.data, s.buf->data);
  return s;
}

ScalarField inverse(Spectrum& s, const ScalarField& like) {
  FftBuffer out(static_cast<std::size_t>(s.nx) * s.ny);
  fftw_execute_dft(plan_cache().get(s.nx, s.ny, FFTW_BACKWARD), s.buf->data, out.data);
  ScalarField f = like;
  const double scale = 1.0 / (static_cast<double>(s.nx) * s.ny);
  for (std::size_t k = 0; k < out.size; ++k) f.values()[k] = out.data[k][0] * scale;
  return f;
}

// Multiply mode (p, q) by symbol(j, l, at_nyquist).
template <class Symbol>
void multiply(Spectrum& s, Symbol symbol) {
  for (int q = 0; q < s.ny; ++q) {
    for (int p = 0; p < s.nx; ++p) {
      const Complex m = symbol(signed_freq(p, s.nx), signed_freq(q, s.ny), nyquist(p, s.nx) || nyquist(q, s.ny));
      fftw_complex& c = s.buf->data[static_cast<std::size_t>(q) * s.nx + p];
      const Complex v = Complex(c[0], c[1]) * m;
      c[0] = v.real();
      c[1] = v.imag();
    }
  }
}

// 1 + 4 pi^2 |j b1 + l b2|^2; the cross term is dropped on Nyquist modes,
// where +n/2 and -n/2 alias, so the symbol stays even and the output real.
struct HelmholtzSymbol {
  explicit HelmholtzSymbol(const PlaneLattice& L) {
    dual_basis(L, b1, b2);
    g11 = std::norm(b1);
    g22 = std::norm(b2);
    g12 = (b1 * std::conj(b2)).real();
  }
  double operator()(int j, int l, bool nyq) const {
    const double k2 = j * j * g11 + l * l * g22 + (nyq ? 0.0 : 2.0 * j * l * g12);
    return 1.0 + 4.0 * kPi * kPi * k2;
  }
  Complex b1, b2;
  double g11, g22, g12;
};

}  // namespace

ScalarField solve_helmholtz(const ScalarField& psi) {
  require_torus(psi, "solve_helmholtz");
  const HelmholtzSymbol sym(psi.lattice());
  Spectrum s = forward(psi);
  multiply(s, [&](int j, int l, bool nyq) { return Complex(1.0 / sym(j, l, nyq)); });
  return inverse(s, psi);
}

ScalarField apply_helmholtz(const ScalarField& phi) {
  require_torus(phi, "apply_helmholtz");
  const HelmholtzSymbol sym(phi.lattice());
  Spectrum s = forward(phi);
  multiply(s, [&](int j, int l, bool nyq) { return Complex(sym(j, l, nyq)); });
  return inverse(s, phi);
}

void spectral_gradient(const ScalarField& psi, ScalarField& dx, ScalarField& dy) {
  require_torus(psi, "spectral_gradient");
  Complex b1, b2;
  dual_basis(psi.lattice(), b1, b2);
  const Complex i2pi(0.0, 2.0 * kPi);
  Spectrum sx = forward(psi);
  Spectrum sy = forward(psi);
  multiply(sx, [&](int j, int l, bool nyq) { return nyq ? Complex(0.0) : i2pi * (j * b1.real() + l * b2.real()); });
  multiply(sy, [&](int j, int l, bool nyq) { return nyq ? Complex(0.0) : i2pi * (j * b1.imag() + l * b2.imag()); });
  dx = inverse(sx, psi);
  dy = inverse(sy, psi);
}

double c1_norm(const ScalarField& psi) {
  ScalarField dx = psi;
  ScalarField dy = psi;
  spectral_gradient(psi, dx, dy);
  double g = 0.0;
  for (std::size_t k = 0; k < psi.values().size(); ++k) g = std::max(g, std::hypot(dx.values()[k], dy.values()[k]));
  return psi.max_abs() + g;
}

ScalarField random_trig_field(const PlaneLattice& torus, int nx, int ny, int max_freq, Rng& rng) {
  if (2 * max_freq >= std::min(nx, ny)) throw std::invalid_argument("random_trig_field: frequencies exceed the grid");
  ScalarField f = ScalarField::torus(torus, nx, ny);
  std::vector<double> cs(static_cast<std::size_t>(nx));
  for (int l = 0; l <= max_freq; ++l) {
    for (int j = -max_freq; j <= max_freq; ++j) {
      if (l == 0 && j <= 0) continue;
      const double a = rng.normal();
      const double b = rng.normal();
      for (int q = 0; q < ny; ++q) {
        for (int p = 0; p < nx; ++p) {
          const double th = 2.0 * kPi * (static_cast<double>(j) * p / nx + static_cast<double>(l) * q / ny);
          f.at(p, q) += a * std::cos(th) + b * std::sin(th);
        }
      }
    }
  }
  return f;
}

FunctionNondegeneracy is_function_nondegenerate(const ScalarField& psi, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("is_function_nondegenerate: R must be positive");
  const double thr = 1.0 / (R * R);
  const int nx = psi.nx(), ny = psi.ny();
  FunctionNondegeneracy out;
  out.ok = true;
  out.worst_sup = std::numeric_limits<double>::infinity();

  // Integer offsets (di, dj) whose displacement di*e1 + dj*e2 has length <= R.
  const Complex e1 = psi.is_torus() ? psi.lattice().w1() / static_cast<double>(nx) : Complex(psi.spacing(), 0.0);
  const Complex e2 = psi.is_torus() ? psi.lattice().w2() / static_cast<double>(ny) : Complex(0.0, psi.spacing());
  const double hmin = std::min(std::abs(e1), std::abs(e2));
  const double skew = std::abs((std::conj(e1) * e2).imag()) / (std::abs(e1) * std::abs(e2));
  const int reach = static_cast<int>(std::ceil(R / (hmin * skew))) + 1;
  std::vector<std::pair<int, int>> offsets;
  for (int dj = -reach; dj <= reach; ++dj) {
    for (int di = -reach; di <= reach; ++di) {
      if (std::abs(static_cast<double>(di) * e1 + static_cast<double>(dj) * e2) <= R * (1.0 + 1e-12)) offsets.push_back({di, dj});
    }
  }
  // The disk sup is at least the sup of its nearest offsets; scan outward so
  // passing centres exit early.
  std::sort(offsets.begin(), offsets.end(), [&](const auto& a, const auto& b) {
    const auto len = [&](const std::pair<int, int>& o) {
      return std::norm(static_cast<double>(o.first) * e1 + static_cast<double>(o.second) * e2);
    };
    return len(a) < len(b);
  });
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      double sup = -std::numeric_limits<double>::infinity();
      for (const auto& [di, dj] : offsets) {
        int p = i + di;
        int q = j + dj;
        if (psi.is_torus()) {
          p = ((p % nx) + nx) % nx;
          q = ((q % ny) + ny) % ny;
        } else if (p < 0 || p >= nx || q < 0 || q >= ny) {
          continue;
        }
        sup = std::max(sup, psi.at(p, q));
        if (sup >= thr) break;
      }
      if (sup < out.worst_sup) {
        out.worst_sup = sup;
        out.worst_center = psi.point(i, j);
      }
      if (sup < thr) out.ok = false;
    }
  }
  return out;
}

KappaEstimate estimate_kappa(double K, double R, int budget, std::uint64_t seed, const KappaOptions& options) {
  if (!(K > 0.0) || !(R > 0.0)) throw std::invalid_argument("estimate_kappa: K and R must be positive");
  if (budget < 10) throw std::invalid_argument("estimate_kappa: budget must be >= 10");
  KappaEstimate est;
  est.K = K;
  est.R = R;
  est.kappa_hat = std::numeric_limits<double>::infinity();
  const PlaneLattice torus = PlaneLattice::square(options.torus_side);
  const double lo = 1.0 / (R * R);
  const bool constants_ok = lo <= K;
  Rng rng(seed);
  int consecutive = 0;
  while (est.samples < budget) {
    std::ostringstream desc;
    ScalarField psi = ScalarField::torus(torus, options.grid, options.grid);
    if (constants_ok && rng.uniform() < options.constant_fraction) {
      const double c = rng.uniform(lo, K);
      std::fill(psi.values().begin(), psi.values().end(), c);
      desc << "constant psi=" << c;
    } else {
      Rng child = rng.child(static_cast<std::uint64_t>(est.samples + est.rejections));
      psi = random_trig_field(torus, options.grid, options.grid, options.max_freq, child);
      const double m = psi.min();
      for (double& v : psi.values()) v -= m;
      const double norm = c1_norm(psi);
      const double target = K * rng.uniform(0.05, 1.0);
      const double offset = rng.uniform(0.0, K - target);
      for (double& v : psi.values()) v = (norm > 0.0 ? v * target / norm : 0.0) + offset;
      desc << "trig sample " << est.samples << " oscillation C1=" << target << " offset=" << offset;
    }
    const bool admissible = c1_norm(psi) <= K * (1.0 + 1e-12) && psi.min() >= 0.0 && is_function_nondegenerate(psi, R).ok;
    if (!admissible) {
      ++est.rejections;
      if (++consecutive >= options.max_consecutive_rejections) {
        throw PreconditionError("estimate_kappa: constraints infeasible at this K, R");
      }
      continue;
    }
    consecutive = 0;
    const ScalarField phi = solve_helmholtz(psi);
    const double inf_phi = phi.min();
    if (!(inf_phi > 0.0)) est.positivity_held = false;
    if (inf_phi < est.kappa_hat) {
      est.kappa_hat = inf_phi;
      est.worst_case = desc.str();
    }
    ++est.samples;
  }
  est.kappa_hat = std::max(0.0, est.kappa_hat);
  return est;
}

}  // namespace brodylab
