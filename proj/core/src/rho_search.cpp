#include "brodylab/rho_search.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "brodylab/domain.hpp"
#include "brodylab/rng.hpp"
#include "brodylab/spherical.hpp"

namespace brodylab {

namespace {

constexpr double kCoeffBound = 2.0;

Complex cpx(const std::vector<double>& p, std::size_t k) { return {p[k], p[k + 1]}; }

EllipticComponent combo(Complex c0, Complex c1, Complex c2) {
  EllipticComponent c{};
  c[0][0] = c0;
  c[1][0] = c1;
  c[0][1] = c2;
  return c;
}

}  // namespace

RhoFamily rho_family(const std::string& id) {
  RhoFamily f;
  f.id = id;
  f.names = {"aspect", "scale", "c1.re", "c1.im", "c2.re", "c2.im", "d1.re", "d1.im", "d2.re", "d2.im"};
  f.box = {{0.5, 2.0}, {0.5, 2.0}};
  for (int k = 0; k < 8; ++k) f.box.emplace_back(-kCoeffBound, kCoeffBound);
  // [1 : wp] on the unit square lattice.
  f.start = {1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0};
  if (id == "elliptic-n1") {
    f.N = 1;
    return f;
  }
  if (id == "elliptic-n2") {
    f.N = 2;
    for (const char* n : {"e0.re", "e0.im", "e1.re", "e1.im", "e2.re", "e2.im"}) {
      f.names.emplace_back(n);
      f.box.emplace_back(-kCoeffBound, kCoeffBound);
      f.start.push_back(0.0);
    }
    return f;
  }
  throw std::invalid_argument("unknown rho family '" + id + "' (expected elliptic-n1 or elliptic-n2)");
}

std::vector<double> embed_n1_in_n2(const std::vector<double>& params) {
  if (params.size() != 10) throw std::invalid_argument("embed_n1_in_n2: expected 10 parameters");
  std::vector<double> out = params;
  out.resize(16, 0.0);
  return out;
}

bool RhoFamily::contains(const std::vector<double>& params) const {
  if (params.size() != box.size()) return false;
  for (std::size_t k = 0; k < box.size(); ++k) {
    if (!(params[k] >= box[k].first && params[k] <= box[k].second)) return false;
  }
  return true;
}

PlaneLattice RhoFamily::lattice(const std::vector<double>& params) const {
  return PlaneLattice::rectangular(params[1], params[1] * params[0]);
}

HoloCurve RhoFamily::make(const std::vector<double>& p) const {
  if (!contains(p)) throw std::invalid_argument("rho family " + id + ": parameters outside the box");
  std::vector<EllipticComponent> comps = {combo(1.0, cpx(p, 2), cpx(p, 4)), combo(0.0, cpx(p, 6), cpx(p, 8))};
  if (N == 2) comps.push_back(combo(cpx(p, 10), cpx(p, 12), cpx(p, 14)));
  return HoloCurve::elliptic(lattice(p), std::move(comps));
}

RhoCandidate evaluate_candidate(const RhoFamily& family, const std::vector<double>& params,
                                const RhoResolution& resolution) {
  RhoCandidate c;
  c.family = family.id;
  c.params = params;
  c.curve = family.make(params);
  c.lattice = family.lattice(params);
  c.resolution = resolution;
  if (c.curve.is_constant()) throw PreconditionError("no normalization: constant curve");
  DensityOptions dens;
  dens.quadrature.base_grid = resolution.quadrature_grid;
  c.rho_raw = energy_density(c.curve, 1.0, 1, dens);
  const Domain cell = Domain::cell(c.lattice);
  const Box b = cell.bbox();
  const double h = std::max(b.width(), b.height()) / resolution.sup_grid;
  auto df = [&](Complex z) { return std::sqrt(spherical_derivative_sq(c.curve.lift(z))); };
  c.lipschitz = grid_sup(df, cell, h, {resolution.refine_passes, 5}).value;
  if (!(c.lipschitz > 0.0)) throw PreconditionError("no normalization: |df| vanishes on the cell");
  c.rho_normalized = c.rho_raw / (c.lipschitz * c.lipschitz);
  if (!std::isfinite(c.rho_normalized)) throw NumericalError("evaluate_candidate: non-finite density");
  return c;
}

namespace {

struct Evaluator {
  const RhoFamily& family;
  const RhoSearchOptions& opts;
  RhoSearchResult& result;
  int restart = 0;
  int used = 0;
  double best = -1.0;

  double operator()(const std::vector<double>& p) {
    ++used;
    ++result.evaluations;
    double v = -1.0;
    try {
      v = evaluate_candidate(family, p, opts.resolution).rho_normalized;
    } catch (const std::exception&) {
      v = -1.0;  // constant or degenerate member: never accepted
    }
    best = std::max(best, v);
    result.trace.push_back({restart, used, v, best, p});
    return v;
  }
};

// Ties prefer the lexicographically smaller parameter vector.
bool better(double v, const std::vector<double>& p, double w, const std::vector<double>& q) {
  if (v != w) return v > w;
  return p < q;
}

std::vector<double> coordinate_search(const RhoFamily& family, std::vector<double> x, Evaluator& eval, int budget) {
  const std::size_t d = x.size();
  std::vector<double> step(d);
  for (std::size_t k = 0; k < d; ++k) step[k] = 0.25 * (family.box[k].second - family.box[k].first);
  double fx = eval(x);
  while (eval.used < budget) {
    bool improved = false;
    for (std::size_t k = 0; k < d && eval.used < budget; ++k) {
      if (family.box[k].first == family.box[k].second) continue;
      for (double dir : {1.0, -1.0}) {
        if (eval.used >= budget) break;
        std::vector<double> y = x;
        y[k] = std::clamp(x[k] + dir * step[k], family.box[k].first, family.box[k].second);
        if (y[k] == x[k]) continue;
        const double fy = eval(y);
        if (fy > fx) {
          x = std::move(y);
          fx = fy;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      bool live = false;
      for (std::size_t k = 0; k < d; ++k) {
        step[k] *= 0.5;
        live = live || step[k] > 1e-4 * (family.box[k].second - family.box[k].first);
      }
      if (!live) break;
    }
  }
  return x;
}

}  // namespace

RhoSearchResult maximize_rho(const RhoFamily& family, const RhoSearchOptions& options) {
  if (options.budget < 1) throw std::invalid_argument("maximize_rho: budget must be >= 1");
  if (options.restarts < 1) throw std::invalid_argument("maximize_rho: restarts must be >= 1");
  RhoSearchResult result;
  result.N = family.N;
  result.max_delta = options.max_delta;
  const std::vector<double> start = options.warm_start ? *options.warm_start : family.start;
  if (!family.contains(start)) throw std::invalid_argument("maximize_rho: start point outside the family box");

  std::vector<std::vector<double>> finalists = {start};
  Rng rng(options.seed);
  for (int r = 0; r < options.restarts; ++r) {
    Evaluator eval{family, options, result, r};
    std::vector<double> x0 = start;
    if (r > 0) {
      Rng child = rng.child(static_cast<std::uint64_t>(r));
      for (std::size_t k = 0; k < x0.size(); ++k) x0[k] = child.uniform(family.box[k].first, family.box[k].second);
    }
    finalists.push_back(coordinate_search(family, x0, eval, options.budget));
  }

  bool found = false;
  double best_hat = -1.0;
  for (const auto& p : finalists) {
    RhoCandidate base;
    RhoCandidate fine;
    try {
      base = evaluate_candidate(family, p, options.resolution);
      fine = evaluate_candidate(family, p, options.resolution.doubled());
    } catch (const std::exception&) {
      continue;
    }
    const double delta = (fine.rho_normalized - base.rho_normalized) / base.rho_normalized;
    if (std::abs(delta) > options.max_delta) continue;
    const double hat = fine.rho_normalized * (1.0 - std::abs(delta));
    if (!found || better(hat, p, best_hat, result.best.params)) {
      found = true;
      best_hat = hat;
      result.best = base;
      result.reevaluated = fine;
      result.delta = delta;
      result.rho_hat = hat;
    }
  }
  if (!found) throw NumericalError("resolution-unstable maximum");
  return result;
}

std::vector<LSweepRow> l_sweep(const RhoCandidate& candidate, const std::vector<double>& L_values, int translate_grid) {
  if (translate_grid < 1) throw std::invalid_argument("l_sweep: translate_grid must be >= 1");
  const double lambda = candidate.lipschitz;
  const HoloCurve g = candidate.curve.rescaled(1.0 / lambda);
  const PlaneLattice lat = candidate.lattice.scaled(lambda);
  const int m = candidate.resolution.quadrature_grid;
  // Quadrature spacing matched to the cell rule along w1.
  const double h = std::abs(lat.w1()) / m;
  std::vector<LSweepRow> out;
  for (double L : L_values) {
    if (!(L > 0.0)) throw std::invalid_argument("l_sweep: L must be positive");
    const int n = std::max(8, static_cast<int>(std::lround(L / h)));
    double best = 0.0;
    for (int j = 0; j < translate_grid; ++j) {
      for (int i = 0; i < translate_grid; ++i) {
        const Complex a = lat.point(static_cast<double>(i) / translate_grid, static_cast<double>(j) / translate_grid);
        const Complex snapped(h * std::round(a.real() / h), h * std::round(a.imag() / h));
        best = std::max(best, energy(g, Domain::square(snapped, L), 0, EnergyOptions{n}));
      }
    }
    out.push_back({L, best / (L * L)});
  }
  return out;
}

double mean_dimension_estimate(int N, double rho_hat) {
  if (N < 1) throw std::invalid_argument("mean_dimension_estimate: N must be >= 1");
  if (!(rho_hat >= 0.0) || rho_hat >= 1.0) {
    throw std::invalid_argument("mean_dimension_estimate: need 0 <= rho_hat < 1 (the energy density is below 1)");
  }
  return 2.0 * (N + 1) * rho_hat;
}

nlohmann::json to_json(const RhoCandidate& c) {
  return {{"family", c.family},
          {"params", c.params},
          {"lattice", {{"w1", {c.lattice.w1().real(), c.lattice.w1().imag()}},
                       {"w2", {c.lattice.w2().real(), c.lattice.w2().imag()}}}},
          {"rho_raw", c.rho_raw},
          {"lipschitz", c.lipschitz},
          {"rho_normalized", c.rho_normalized},
          {"quadrature_grid", c.resolution.quadrature_grid},
          {"sup_grid", c.resolution.sup_grid},
          {"refine_passes", c.resolution.refine_passes}};
}

nlohmann::json to_json(const RhoSearchResult& r) {
  return {{"family", r.best.family},
          {"N", r.N},
          {"params", r.best.params},
          {"rho_hat", r.rho_hat},
          {"error_budget", {{"reevaluation_delta", r.delta}, {"max_delta", r.max_delta}}},
          {"mean_dimension_estimate", mean_dimension_estimate(r.N, r.rho_hat)},
          {"mean_dimension_note", "numerical lower bound"},
          {"evaluations", r.evaluations},
          {"best", to_json(r.best)},
          {"reevaluated", to_json(r.reevaluated)}};
}

std::string trace_csv(const RhoSearchResult& r) {
  std::ostringstream out;
  out.precision(17);
  out << "restart,evaluation,rho_normalized,best";
  if (!r.trace.empty()) {
    for (std::size_t k = 0; k < r.trace.front().params.size(); ++k) out << ",p" << k;
  }
  out << '\n';
  for (const RhoTraceRow& row : r.trace) {
    out << row.restart << ',' << row.evaluation << ',' << row.rho_normalized << ',' << row.best;
    for (double p : row.params) out << ',' << p;
    out << '\n';
  }
  return out.str();
}

}  // namespace brodylab
