#include "brodylab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "brodylab/spherical.hpp"

namespace brodylab {

HoloCurve CurveFamily::operator()(const std::vector<double>& theta) const {
  if (!contains(theta)) throw std::invalid_argument("CurveFamily " + id + ": parameters outside the box");
  return make(theta);
}

bool CurveFamily::contains(const std::vector<double>& theta) const {
  if (theta.size() != box.size()) return false;
  for (std::size_t k = 0; k < box.size(); ++k) {
    if (theta[k] < box[k].first || theta[k] > box[k].second) return false;
  }
  return true;
}

std::vector<double> CurveFamily::sample(Rng& rng) const {
  std::vector<double> theta;
  theta.reserve(box.size());
  for (const auto& [lo, hi] : box) theta.push_back(lo == hi ? lo : rng.uniform(lo, hi));
  return theta;
}

CurveFamily constant_family(const HoloCurve& f) {
  CurveFamily fam;
  fam.id = "constant";
  fam.box = {{0.0, 0.0}};
  fam.make = [f](const std::vector<double>&) { return f; };
  return fam;
}

CurveFamily translated_lattice_family(double period) {
  const PlaneLattice lattice(period, Complex(0.0, period));
  EllipticComponent one{};
  one[0][0] = 1.0;
  EllipticComponent wp{};
  wp[1][0] = 1.0;
  const HoloCurve base = HoloCurve::elliptic(lattice, {one, wp});
  CurveFamily fam;
  fam.id = "translated-lattice";
  fam.box = {{0.0, period}, {0.0, period}};
  fam.make = [base](const std::vector<double>& t) { return base.translated(Complex(t[0], t[1])); };
  return fam;
}

std::vector<Complex> dynamical_sample_points(const CurveFamily& family, const Domain& omega, double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("dynamical_sample_points: resolution must be positive");
  const std::vector<Complex> shifts = omega.grid_points(resolution);
  const std::vector<Complex> window = family.window.grid_points(family.resolution);
  const double q = 1e-9;
  std::set<std::pair<long long, long long>> seen;
  std::vector<Complex> out;
  for (const Complex& a : shifts) {
    for (const Complex& w : window) {
      const Complex z = a + w;
      if (seen.emplace(std::llround(z.real() / q), std::llround(z.imag() / q)).second) out.push_back(z);
    }
  }
  return out;
}

namespace {

std::vector<HomogVec> values_on(const HoloCurve& f, const std::vector<Complex>& pts) {
  std::vector<HomogVec> out;
  out.reserve(pts.size());
  for (const Complex& z : pts) out.push_back(f.lift(z).value);
  return out;
}

double sup_chordal(const std::vector<HomogVec>& a, const std::vector<HomogVec>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, chordal_distance(a[i], b[i]));
  return s;
}

}  // namespace

double dynamical_distance(const CurveFamily& family, const std::vector<double>& theta1,
                          const std::vector<double>& theta2, const Domain& omega, double resolution) {
  const std::vector<Complex> pts = dynamical_sample_points(family, omega, resolution);
  return sup_chordal(values_on(family(theta1), pts), values_on(family(theta2), pts));
}

FiniteMetricSpace dynamical_space(const CurveFamily& family, const std::vector<std::vector<double>>& thetas,
                                  const Domain& omega, double resolution) {
  const std::vector<Complex> pts = dynamical_sample_points(family, omega, resolution);
  std::vector<std::vector<HomogVec>> vals;
  vals.reserve(thetas.size());
  for (const auto& t : thetas) vals.push_back(values_on(family(t), pts));
  return FiniteMetricSpace::from_function(thetas.size(),
                                          [&](std::size_t i, std::size_t j) { return sup_chordal(vals[i], vals[j]); });
}

std::vector<CountReport> entropy_at_scale(const CurveFamily& family, double eps, const std::vector<Domain>& windows,
                                          int sample_size, std::uint64_t seed, double resolution) {
  if (!(eps > 0.0)) throw std::invalid_argument("entropy_at_scale: eps must be positive");
  if (sample_size < 100) throw std::invalid_argument("entropy_at_scale: sample_size must be >= 100");
  Rng rng(seed);
  std::vector<std::vector<double>> thetas;
  thetas.reserve(static_cast<std::size_t>(sample_size));
  for (int s = 0; s < sample_size; ++s) thetas.push_back(family.sample(rng));
  std::vector<CountReport> out;
  for (const Domain& w : windows) {
    const FiniteMetricSpace space = dynamical_space(family, thetas, w, resolution);
    CountReport r;
    r.eps = eps;
    r.sep_count = greedy_separated(space, eps).size();
    r.cover_count = greedy_cover(space, eps);
    r.window = w.describe();
    r.window_area = w.area();
    r.sample_size = static_cast<std::size_t>(sample_size);
    r.seed = seed;
    r.entropy = r.window_area > 0.0 ? std::log(static_cast<double>(r.cover_count)) / r.window_area : 0.0;
    out.push_back(r);
  }
  return out;
}

namespace {

using Matrix = std::vector<std::vector<Complex>>;

// M applied to the homogeneous components of a rational or elliptic curve.
HoloCurve mix_components(const HoloCurve& f, const Matrix& M) {
  const int n = f.dim() + 1;
  if (f.kind() == CurveKind::transformed) {
    return mix_components(f.base(), M).transformed(f.alpha(), f.beta());
  }
  if (f.kind() == CurveKind::elliptic) {
    const auto& comps = f.elliptic_components();
    std::vector<EllipticComponent> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      EllipticComponent c{};
      for (int l = 0; l < n; ++l) {
        for (int i = 0; i < 4; ++i) {
          for (int j = 0; j < 2; ++j) c[i][j] += M[k][l] * comps[l][i][j];
        }
      }
      out[k] = c;
    }
    return HoloCurve::elliptic(f.elliptic_lattice(), std::move(out));
  }
  if (f.kind() == CurveKind::rational) {
    const auto& comps = f.rational_components();
    std::size_t len = 0;
    for (const Polynomial& p : comps) len = std::max(len, p.coeffs().size());
    std::vector<Polynomial> out;
    for (int k = 0; k < n; ++k) {
      std::vector<Complex> c(len, 0.0);
      for (int l = 0; l < n; ++l) {
        for (std::size_t d = 0; d < comps[l].coeffs().size(); ++d) c[d] += M[k][l] * comps[l].coeffs()[d];
      }
      out.emplace_back(std::move(c));
    }
    return HoloCurve::rational(std::move(out));
  }
  throw PreconditionError("entropy_growth_check: perturbations need a rational, elliptic or transformed curve");
}

std::size_t count_at(const std::vector<HoloCurve>& curves, const Domain& lambda, double eps, double resolution) {
  const std::vector<Complex> pts = lambda.grid_points(resolution);
  std::vector<std::vector<HomogVec>> vals;
  vals.reserve(curves.size());
  for (const HoloCurve& g : curves) vals.push_back(values_on(g, pts));
  const FiniteMetricSpace space = FiniteMetricSpace::from_function(
      curves.size(), [&](std::size_t i, std::size_t j) { return sup_chordal(vals[i], vals[j]); });
  return greedy_separated(space, eps).size();
}

}  // namespace

GrowthFit fit_growth(const std::vector<GrowthRun>& runs, double eps) {
  if (runs.size() != 2) throw std::invalid_argument("fit_growth: expects the L and 2L runs");
  const double y1 = std::log(static_cast<double>(runs[0].count));
  const double y2 = std::log(static_cast<double>(runs[1].count));
  const double E1 = runs[0].exponent;
  const double E2 = runs[1].exponent;
  const double L1 = runs[0].L;
  GrowthFit fit;
  double u = 0.0;
  const double den = E2 - 2.0 * E1;
  if (den != 0.0) u = (y2 - 2.0 * y1) / den;
  double c3 = u > 0.0 ? (y1 / u - E1) / L1 : -1.0;
  if (!(u > 0.0) || c3 < 0.0) {
    fit.clamped = true;
    c3 = 0.0;
    u = std::max(y1 / E1, y2 / E2);
  }
  fit.C3 = c3;
  fit.C2 = eps * std::exp(u);
  return fit;
}

GrowthReport entropy_growth_check(const HoloCurve& f, double R, const Domain& lambda, double eps, double delta2,
                                int sample_size, std::uint64_t seed, double resolution) {
  if (lambda.kind() != DomainKind::square) throw std::invalid_argument("entropy_growth_check: Lambda must be a square");
  if (!(eps > 0.0) || !(delta2 > 0.0)) throw std::invalid_argument("entropy_growth_check: eps and delta2 must be positive");
  if (sample_size < 1) throw std::invalid_argument("entropy_growth_check: sample_size must be positive");
  const NondegeneracyResult nd = is_nondegenerate(f, R, lambda, std::min(R, lambda.side()) / 4.0);
  if (!nd.ok) {
    throw PreconditionError("entropy_growth_check: f is not R-nondegenerate over Lambda (sup " +
                            std::to_string(nd.worst_sup) + " < 1/R)");
  }
  const Domain box = f.period_lattice() ? default_search_box(f) : lambda;
  const double lip = lipschitz_sup(f, box, default_resolution(box)).value;
  if (lip > 2.0) throw PreconditionError("entropy_growth_check: lipschitz_sup(f) = " + std::to_string(lip) + " > 2");

  const int n = f.dim() + 1;
  const double L = lambda.side();
  const Complex corner = lambda.corner();
  const std::vector<Domain> windows = {lambda, Domain::square(corner, 2.0 * L)};

  GrowthReport rep;
  rep.R = R;
  rep.eps = eps;
  rep.delta2 = delta2;
  rep.sample_size = sample_size;
  rep.seed = seed;

  // Per window one seeded stream; the doubled run extends the first run's sample.
  const double scale = 0.25 * delta2;
  auto draw = [&](Rng& rng, const Domain& outer, std::size_t& rejections) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      Matrix M(static_cast<std::size_t>(n), std::vector<Complex>(static_cast<std::size_t>(n)));
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          if (k == 0 && l == 0) {
            M[k][l] = 1.0;
            continue;
          }
          M[k][l] = Complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale));
          if (k == l) M[k][l] += 1.0;
        }
      }
      const Complex tau(rng.uniform(-scale, scale), rng.uniform(-scale, scale));
      const HoloCurve g = mix_components(f, M).translated(tau);
      if (sup_distance(f, g, outer, 0.25) <= delta2) return g;
      ++rejections;
    }
    throw NumericalError("entropy_growth_check: perturbation sampling rejected 1000 times in a row");
  };

  for (std::size_t w = 0; w < 2; ++w) {
    const Domain& win = windows[w];
    const Box b = win.bbox().grown(5.0);
    const Domain outer = Domain::rect({b.x0, b.y0}, b.width(), b.height());
    Rng rng(split_seed(seed, w));
    std::vector<HoloCurve> curves;
    std::size_t rej = 0;
    for (int s = 0; s < 2 * sample_size; ++s) curves.push_back(draw(rng, outer, rej));
    const double energy_w = energy(f, win);
    for (int pass = 0; pass < 2; ++pass) {
      const std::size_t m = static_cast<std::size_t>(sample_size) << pass;
      GrowthRun run;
      run.L = win.side();
      run.energy = energy_w;
      run.exponent = 2.0 * n * energy_w;
      run.count = count_at(std::vector<HoloCurve>(curves.begin(), curves.begin() + static_cast<long>(m)), win, eps,
                           resolution);
      run.accepted = m;
      run.rejected = rej;
      (pass == 0 ? rep.runs : rep.runs_doubled).push_back(run);
    }
  }

  rep.fit = fit_growth(rep.runs, eps);
  rep.fit_doubled = fit_growth(rep.runs_doubled, eps);
  auto holds = [&](const std::vector<GrowthRun>& runs, const GrowthFit& fit) {
    for (const GrowthRun& r : runs) {
      const double bound = (r.exponent + fit.C3 * r.L) * std::log(fit.C2 / eps);
      if (std::log(static_cast<double>(r.count)) > bound * (1.0 + 1e-12) + 1e-12) return false;
    }
    return true;
  };
  rep.bound_holds = holds(rep.runs, rep.fit) && holds(rep.runs_doubled, rep.fit_doubled);
  auto close = [](double a, double b) { return std::abs(a - b) <= 0.2 * std::max(std::abs(a), std::abs(b)) + 1e-12; };
  rep.stable = close(rep.fit.C2, rep.fit_doubled.C2) && close(rep.fit.C3, rep.fit_doubled.C3);
  auto scaling = [](const std::vector<GrowthRun>& runs) {
    const double y1 = std::log(static_cast<double>(runs[0].count));
    const double y2 = std::log(static_cast<double>(runs[1].count));
    return y2 <= y1 * runs[1].exponent / runs[0].exponent + std::log(2.0);
  };
  rep.scaling_ok = scaling(rep.runs) && scaling(rep.runs_doubled);
  return rep;
}

nlohmann::json to_json(const GrowthReport& r) {
  auto runs = [](const std::vector<GrowthRun>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const GrowthRun& x : v) {
      a.push_back({{"L", x.L},
                   {"energy", x.energy},
                   {"exponent", x.exponent},
                   {"log_count", std::log(static_cast<double>(x.count))},
                   {"count", x.count},
                   {"samples", x.accepted},
                   {"rejected", x.rejected}});
    }
    return a;
  };
  auto fit = [](const GrowthFit& f) { return nlohmann::json{{"C2", f.C2}, {"C3", f.C3}, {"clamped", f.clamped}}; };
  return {{"R", r.R},
          {"eps", r.eps},
          {"delta2", r.delta2},
          {"sample_size", r.sample_size},
          {"seed", r.seed},
          {"runs", runs(r.runs)},
          {"runs_doubled_samples", runs(r.runs_doubled)},
          {"fit", fit(r.fit)},
          {"fit_doubled_samples", fit(r.fit_doubled)},
          {"bound_holds", r.bound_holds},
          {"stable", r.stable},
          {"scaling_ok", r.scaling_ok},
          {"pass", r.pass()}};
}

}  // namespace brodylab
