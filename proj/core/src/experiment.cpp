#include "brodylab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "brodylab/blowup.hpp"
#include "brodylab/curvature.hpp"
#include "brodylab/curve_io.hpp"
#include "brodylab/dynamics.hpp"
#include "brodylab/helmholtz.hpp"
#include "brodylab/metric_space.hpp"
#include "brodylab/rho_search.hpp"
#include "brodylab/rng.hpp"
#include "brodylab/spherical.hpp"

#ifndef BRODYLAB_VERSION
#define BRODYLAB_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;

namespace brodylab {

std::string tool_version() { return BRODYLAB_VERSION; }

namespace {

// Raised by pipelines for inputs that make the run invalid rather than failed.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

std::string csv_num(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

void add(ExperimentResult& r, std::string name, bool pass, std::string detail) {
  r.invariants.push_back({std::move(name), pass, std::move(detail)});
}

nlohmann::json invariants_json(const std::vector<Invariant>& inv) {
  nlohmann::json a = nlohmann::json::array();
  for (const Invariant& i : inv) a.push_back({{"name", i.name}, {"pass", i.pass}, {"detail", i.detail}});
  return a;
}

HoloCurve unit_wp() {
  EllipticComponent one{};
  one[0][0] = 1.0;
  EllipticComponent wp{};
  wp[1][0] = 1.0;
  return HoloCurve::elliptic(PlaneLattice::square(1.0), {one, wp});
}

// ---- pde-selftest ----------------------------------------------------------

void run_pde(const ExperimentConfig& c, ExperimentResult& r) {
  const int samples = static_cast<int>(c.get_int("samples"));
  const int grid = static_cast<int>(c.get_int("grid"));
  const int max_freq = static_cast<int>(c.get_int("max_freq"));
  const double side = c.get_real("torus_side");
  const double tol = c.get_real("residual_tol");
  const double C = c.get_real("bound_constant");
  if (2 * max_freq >= grid) throw InvalidInput("pde-selftest: max_freq must be below grid/2");
  const PlaneLattice torus = PlaneLattice::square(side);

  std::ostringstream csv;
  csv << "sample,sup_psi,sup_phi,ratio,residual\n";
  int residual_ok = 0;
  int bound_ok = 0;
  double worst_residual = 0.0;
  double worst_ratio = 0.0;
  for (int i = 0; i < samples; ++i) {
    Rng rng(split_seed(c.seed, static_cast<std::uint64_t>(i)));
    const ScalarField psi = random_trig_field(torus, grid, grid, max_freq, rng);
    const ScalarField phi = solve_helmholtz(psi);
    const ScalarField back = apply_helmholtz(phi);
    double res = 0.0;
    for (std::size_t k = 0; k < psi.values().size(); ++k) res = std::max(res, std::abs(back.values()[k] - psi.values()[k]));
    const double sp = psi.max_abs();
    res /= std::max(sp, 1.0);
    const double ratio = sp > 0.0 ? phi.max_abs() / sp : 0.0;
    residual_ok += res <= tol;
    bound_ok += phi.max_abs() <= C * sp;
    worst_residual = std::max(worst_residual, res);
    worst_ratio = std::max(worst_ratio, ratio);
    csv << i << ',' << csv_num(sp) << ',' << csv_num(phi.max_abs()) << ',' << csv_num(ratio) << ',' << csv_num(res)
        << '\n';
  }
  r.tables["pde-selftest.csv"] = csv.str();
  const std::string passes = std::to_string(bound_ok) + "/" + std::to_string(samples);
  add(r, "spectral_residual", residual_ok == samples,
      std::to_string(residual_ok) + "/" + std::to_string(samples) + " within " + fmt(tol) + ", worst " +
          fmt(worst_residual));
  add(r, "sup_bound", bound_ok == samples, passes + " with sup|phi| <= " + fmt(C) + " sup|psi|");

  // psi = c gives phi = c.
  ScalarField cst = ScalarField::torus(torus, grid, grid);
  cst.fill([](Complex) { return 0.75; });
  double err_c = 0.0;
  const ScalarField phi_c = solve_helmholtz(cst);
  for (double v : phi_c.values()) err_c = std::max(err_c, std::abs(v - 0.75));
  add(r, "constant_solution", err_c <= 1e-10, "max error " + fmt(err_c));

  // psi = cos(2 pi (j x + l y) / side) gives psi / (1 + 4 pi^2 (j^2 + l^2) / side^2).
  const int j = std::max(1, max_freq / 2);
  const int l = 1;
  ScalarField mode = ScalarField::torus(torus, grid, grid);
  mode.fill([&](Complex z) { return std::cos(2.0 * kPi * (j * z.real() + l * z.imag()) / side); });
  const double factor = 1.0 / (1.0 + 4.0 * kPi * kPi * (j * j + l * l) / (side * side));
  const ScalarField phi_mode = solve_helmholtz(mode);
  double err_m = 0.0;
  for (std::size_t k = 0; k < mode.values().size(); ++k) {
    err_m = std::max(err_m, std::abs(phi_mode.values()[k] - factor * mode.values()[k]));
  }
  add(r, "single_mode_solution", err_m <= 1e-10, "max error " + fmt(err_m));

  r.report = {{"samples", samples},
              {"grid", grid},
              {"torus_side", side},
              {"residual_tol", tol},
              {"worst_residual", worst_residual},
              {"sup_bound_constant", C},
              {"sup_bound_passes", passes},
              {"worst_sup_ratio", worst_ratio},
              {"constant_solution_error", err_c},
              {"single_mode_solution_error", err_m}};

  const long kb = c.get_int("kappa_budget");
  if (kb > 0 && kb < 10) throw InvalidInput("pde-selftest: kappa_budget must be 0 or at least 10");
  if (kb > 0) {
    KappaOptions ko;
    ko.torus_side = side;
    ko.grid = grid;
    ko.max_freq = max_freq;
    const KappaEstimate k = estimate_kappa(c.get_real("kappa_K"), c.get_real("kappa_R"), static_cast<int>(kb),
                                           split_seed(c.seed, 1u << 20), ko);
    r.report["kappa"] = {{"K", k.K},           {"R", k.R},
                         {"kappa_hat", k.kappa_hat}, {"samples", k.samples},
                         {"rejections", k.rejections}, {"worst_case", k.worst_case},
                         {"positivity_held", k.positivity_held}};
    add(r, "kappa_positivity", k.positivity_held, "kappa_hat " + fmt(k.kappa_hat) + " over " +
                                                      std::to_string(k.samples) + " samples");
  }
  r.headline = {{"sup_bound_passes", passes}};
}

// ---- blowup-verify ---------------------------------------------------------

void run_blowup(const ExperimentConfig& c, ExperimentResult& r) {
  const int N = static_cast<int>(c.get_int("N"));
  const int samples = static_cast<int>(c.get_int("samples"));
  const double delta3 = c.get_real("delta3");
  const double lambda = c.get_real("lambda");
  const double R2 = c.get_real("R2");

  const double a = bubble_constant(N);
  const double maxdh = bubble_max_derivative(a, N);
  add(r, "bubble_max_derivative", std::abs(maxdh - 0.1) <= 1e-8, "max|dh| = " + csv_num(maxdh));

  const BlowupReport fit = pure_bubble_report(N, std::max(R2, 100.0), samples, split_seed(c.seed, 0));
  add(r, "fit_stability", fit.pass(), "C4 = " + fmt(fit.C4) + ", fits finite and within 10% under doubling");

  const double R = self_consistent_radius(delta3, fit.C4, lambda, R2);
  BlowupConstants k;
  k.delta3 = delta3;
  k.R = R;
  k.R2 = R2;
  k.C4 = fit.C4;
  k.lambda = lambda;
  k.R1 = 10.0 * R / delta3;

  std::ostringstream inst_csv;
  inst_csv << "instance,N,p_re,p_im,window_sup\n";
  const int instances = static_cast<int>(c.get_int("instances"));
  int window_ok = 0;
  for (int i = 0; i < instances; ++i) {
    Rng rng(split_seed(c.seed, 1000 + static_cast<std::uint64_t>(i)));
    const Complex p(rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0));
    std::vector<Polynomial> comps = {Polynomial({1.0})};
    for (int n = 1; n <= N; ++n) {
      const Complex cc(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      const Complex e = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)) * (0.2 * delta3 / R);
      comps.push_back(Polynomial({cc - e * p, e}));
    }
    const HoloCurve f = HoloCurve::rational(std::move(comps));
    const HoloCurve fh = blow_up_once(f, BubbleSpec{p, f.lift(p).value, a}, R, delta3);
    const double s = bubble_window_sup(fh, p, R);
    window_ok += s > 0.01 && s < 1.0;
    inst_csv << i << ',' << N << ',' << csv_num(p.real()) << ',' << csv_num(p.imag()) << ',' << csv_num(s) << '\n';
  }
  add(r, "bubble_window", window_ok == instances,
      std::to_string(window_ok) + "/" + std::to_string(instances) + " with sup_{D_{R/2}(p)} |df^| in (1/100, 1)");

  std::ostringstream syn_csv;
  syn_csv << "curve,scale,degree,centers,bad,lipschitz,nondegenerate\n";
  const int synthetic = static_cast<int>(c.get_int("synthetic"));
  const double lip_res = c.get_real("lipschitz_resolution");
  const Domain lam = Domain::square({0.0, 0.0}, 3.0 * R);
  int lip_ok = 0;
  int nd_ok = 0;
  nlohmann::json first_plan;
  for (int t = 0; t < synthetic; ++t) {
    Rng rng(split_seed(c.seed, 2000 + static_cast<std::uint64_t>(t)));
    const double scale = std::pow(10.0, rng.uniform(-9.0, -3.0));
    const Complex c1(rng.uniform(0.0, 3.0 * R), rng.uniform(0.0, 3.0 * R));
    const Complex c2(rng.uniform(0.0, 3.0 * R), rng.uniform(0.0, 3.0 * R));
    const int degree = 1 + t % 2;
    std::vector<Polynomial> comps = {Polynomial({1.0})};
    for (int n = 1; n <= N; ++n) {
      const Complex w = n == 1 ? 1.0 : Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      if (degree == 1) {
        comps.push_back(Polynomial({-w * scale * c1, w * scale}));
      } else {
        const double s2 = scale / R;
        comps.push_back(Polynomial({w * s2 * c1 * c2, -w * s2 * (c1 + c2), w * s2}));
      }
    }
    const HoloCurve f = HoloCurve::rational(std::move(comps));
    const ResolveResult res = resolve(f, lam, lambda, k);
    const ResolveCheck chk = check_resolution(res.curve, res.plan, lip_res);
    lip_ok += chk.lipschitz_ok;
    nd_ok += chk.nondegenerate;
    if (t == 0) first_plan = to_json(res.plan);
    syn_csv << t << ',' << csv_num(scale) << ',' << degree << ',' << res.plan.centers.size() << ','
            << res.plan.bad_count() << ',' << csv_num(chk.lipschitz) << ',' << (chk.nondegenerate ? 1 : 0) << '\n';
  }
  if (synthetic > 0) {
    add(r, "resolve_lipschitz", lip_ok == synthetic,
        std::to_string(lip_ok) + "/" + std::to_string(synthetic) + " with lipschitz_sup <= " + fmt(lambda));
    add(r, "resolve_nondegenerate", nd_ok == synthetic,
        std::to_string(nd_ok) + "/" + std::to_string(synthetic) + " nondegenerate at R1 = " + fmt(k.R1));
  }

  r.tables["blowup-verify.csv"] = inst_csv.str();
  r.tables["blowup-verify.resolve.csv"] = syn_csv.str();
  r.report = {{"N", N},
              {"bubble_constant", a},
              {"bubble_max_derivative", maxdh},
              {"fit", to_json(fit)},
              {"R", R},
              {"R1", k.R1},
              {"C4", fit.C4},
              {"C4_near", fit.C4_near},
              {"window_instances", instances},
              {"window_passes", window_ok},
              {"synthetic_curves", synthetic}};
  if (!first_plan.is_null()) r.report["first_plan"] = first_plan;
  r.headline = {{"N", N}, {"C4", fit.C4}, {"C4_near", fit.C4_near}, {"R", R}};
}

// ---- entropy-scan ----------------------------------------------------------

void run_entropy(const ExperimentConfig& c, ExperimentResult& r) {
  const CurveFamily family = translated_lattice_family(c.get_real("period"));
  const std::vector<double> eps = c.get_list("eps");
  const std::vector<double> sides = c.get_list("sides");
  if (eps.empty() || sides.empty()) throw InvalidInput("entropy-scan: eps and sides must be non-empty");
  std::vector<Domain> windows;
  for (double s : sides) windows.push_back(Domain::square({0.0, 0.0}, s));
  const int sample_size = static_cast<int>(c.get_int("sample_size"));
  const double res = c.get_real("resolution");

  std::vector<CountReport> all;
  nlohmann::json counts = nlohmann::json::array();
  bool chain_ok = true;
  bool finite_ok = true;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const auto reps = entropy_at_scale(family, eps[i], windows, sample_size, split_seed(c.seed, i), res);
    for (const CountReport& cr : reps) {
      chain_ok = chain_ok && cr.sep_count >= 1 && cr.cover_count >= 1 && cr.cover_count <= cr.sample_size;
      finite_ok = finite_ok && std::isfinite(cr.entropy) && cr.entropy >= 0.0;
      counts.push_back(to_json(cr));
      all.push_back(cr);
    }
  }
  add(r, "counts_valid", chain_ok, "every window has 1 <= counts <= sample size");
  add(r, "entropy_finite", finite_ok, "S = log(cover) / area finite and non-negative");
  r.tables["entropy-scan.csv"] = count_reports_csv(all);
  r.report = {{"family", family.id}, {"counts", counts}};

  // Slope on the largest window when the scales allow it.
  std::map<double, double> by_eps;
  for (const CountReport& cr : all) {
    if (cr.window_area == windows.back().area()) by_eps[cr.eps] = cr.entropy;
  }
  try {
    const MmdimEstimate m = mmdim_slope(by_eps);
    r.report["mmdim"] = {{"slope", m.slope}, {"intercept", m.intercept}, {"min_ratio", m.min_ratio}};
  } catch (const std::invalid_argument& e) {
    r.report["mmdim"] = {{"skipped", e.what()}};
  }

  if (c.get_bool("growth_check")) {
    const Normalization nz = brody_normalize(unit_wp());
    const double period = std::abs(PlaneLattice::square(1.0).w1()) * nz.lambda;
    const GrowthReport g = entropy_growth_check(nz.curve, c.get_real("growth_R"), Domain::square({0.0, 0.0}, period),
                                                c.get_real("growth_eps"), c.get_real("growth_delta2"),
                                                static_cast<int>(c.get_int("growth_samples")),
                                                split_seed(c.seed, 1u << 20), c.get_real("growth_resolution"));
    r.report["growth"] = to_json(g);
    add(r, "growth_bound", g.bound_holds, "log count within the fitted bound on every run");
    add(r, "growth_fit_stable", g.stable,
        "C2 " + fmt(g.fit.C2) + " vs " + fmt(g.fit_doubled.C2) + ", C3 " + fmt(g.fit.C3) + " vs " + fmt(g.fit_doubled.C3));
    add(r, "growth_scaling", g.scaling_ok, "count(2L) consistent with the energy ratio");
  }
  r.headline = {{"windows", sides.size()}, {"scales", eps.size()}};
}

// ---- rho-search ------------------------------------------------------------

void run_rho(const ExperimentConfig& c, ExperimentResult& r) {
  const RhoFamily family = rho_family(c.get_text("family"));
  RhoSearchOptions opt;
  opt.budget = static_cast<int>(c.get_int("budget"));
  opt.restarts = static_cast<int>(c.get_int("restarts"));
  opt.seed = split_seed(c.seed, 0);
  opt.resolution.quadrature_grid = static_cast<int>(c.get_int("quadrature_grid"));
  opt.resolution.sup_grid = static_cast<int>(c.get_int("sup_grid"));
  opt.resolution.refine_passes = static_cast<int>(c.get_int("refine_passes"));
  opt.max_delta = c.get_real("max_delta");

  std::optional<RhoSearchResult> base;
  if (family.N == 2 && c.get_bool("warm_start")) {
    base = maximize_rho(rho_family("elliptic-n1"), opt);
    opt.warm_start = embed_n1_in_n2(base->best.params);
  }
  opt.seed = split_seed(c.seed, static_cast<std::uint64_t>(family.N));
  const RhoSearchResult res = maximize_rho(family, opt);

  add(r, "rho_in_unit_interval", res.rho_hat > 0.0 && res.rho_hat < 1.0, "rho_hat = " + csv_num(res.rho_hat));
  add(r, "reevaluation_delta", std::abs(res.delta) <= opt.max_delta,
      "|delta| = " + fmt(std::abs(res.delta)) + " <= " + fmt(opt.max_delta));
  const double md = mean_dimension_estimate(res.N, res.rho_hat);
  add(r, "mean_dimension_formula", md == 2.0 * (res.N + 1) * res.rho_hat, "2(N+1) rho_hat = " + csv_num(md));

  r.report = to_json(res);
  if (base) {
    r.report["embedded_n1"] = {{"rho_hat", base->rho_hat}, {"params", base->best.params}};
    add(r, "n2_dominates_n1", res.rho_hat >= base->rho_hat,
        "rho_hat_2 = " + csv_num(res.rho_hat) + ", rho_hat_1 = " + csv_num(base->rho_hat));
  }
  r.tables["rho-search.csv"] = trace_csv(res);

  const std::vector<double> periods = c.get_list("l_sweep");
  if (!periods.empty()) {
    const double unit = std::abs(res.reevaluated.lattice.w1()) * res.reevaluated.lipschitz;
    std::vector<double> Ls;
    for (double p : periods) Ls.push_back(p * unit);
    std::ostringstream csv;
    csv << "periods,L,value\n";
    nlohmann::json rows = nlohmann::json::array();
    const auto sweep = l_sweep(res.reevaluated, Ls, static_cast<int>(c.get_int("translate_grid")));
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      csv << csv_num(periods[i]) << ',' << csv_num(sweep[i].L) << ',' << csv_num(sweep[i].value) << '\n';
      rows.push_back({{"periods", periods[i]}, {"L", sweep[i].L}, {"value", sweep[i].value}});
    }
    r.tables["rho-search.l_sweep.csv"] = csv.str();
    r.report["l_sweep"] = rows;
  }
  r.headline = {{"family", family.id}, {"N", res.N}, {"rho_hat", res.rho_hat}, {"mean_dimension_estimate", md}};
}

// ---- curve-check -----------------------------------------------------------

int max_degree(const HoloCurve& f) {
  int d = 0;
  for (const Polynomial& p : f.rational_components()) d = std::max(d, p.degree());
  return d;
}

void run_curve(const HoloCurve& f, int chern_grid, double density_window, ExperimentResult& r) {
  r.report = {{"dim", f.dim()}};
  Normalization nz;
  try {
    nz = brody_normalize(f);
  } catch (const PreconditionError& e) {
    add(r, "normalization", false, e.what());
    r.report["normalization"] = {{"error", e.what()}};
    return;
  }
  add(r, "normalization", nz.lambda > 0.0 && std::isfinite(nz.lambda), "lipschitz " + csv_num(nz.lambda));
  r.report["lipschitz"] = nz.lambda;
  r.headline = {{"lipschitz", nz.lambda}};

  if (const auto lattice = f.period_lattice()) {
    const double chern = chern_integral(f, *lattice, chern_grid);
    const double nearest = std::round(chern);
    add(r, "chern_integral_integer", std::abs(chern - nearest) <= 0.02,
        "chern " + csv_num(chern) + " (nearest integer " + fmt(nearest) + ")");
    DensityOptions dens;
    dens.quadrature.base_grid = 64;
    const double raw = energy_density(f, 1.0, 1, dens);
    const double norm = raw / (nz.lambda * nz.lambda);
    r.report["chern_integral"] = chern;
    r.report["rho_raw"] = raw;
    r.report["rho_normalized"] = norm;
    add(r, "density_below_one", norm >= 0.0 && norm < 1.0, "normalized density " + csv_num(norm));
  } else if (f.kind() == CurveKind::rational) {
    const int k = max_degree(f);
    const double e = energy(f, default_search_box(f));
    r.report["degree_bound"] = k;
    r.report["energy_search_box"] = e;
    add(r, "energy_at_most_degree", e <= k + 1e-6, "energy " + csv_num(e) + " <= degree " + std::to_string(k));
  }
  if (density_window > 0.0 && !f.period_lattice()) {
    r.report["energy_density_window"] = energy_density(f, density_window);
  }
}

void finish(ExperimentResult& r) {
  for (const Invariant& i : r.invariants) {
    if (!i.pass) {
      r.status = kStatusAssertion;
      r.message = "invariant '" + i.name + "' failed: " + i.detail;
      return;
    }
  }
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

}  // namespace

ExperimentResult check_curve(const HoloCurve& f, int chern_grid, double density_window) {
  ExperimentResult r;
  try {
    run_curve(f, chern_grid, density_window, r);
  } catch (const std::exception& e) {
    add(r, "pipeline", false, e.what());
  }
  finish(r);
  if (r.status != kStatusOk) {
    // The normalization error is the message callers look for.
    for (const Invariant& i : r.invariants) {
      if (!i.pass && i.name == "normalization") r.message = i.detail;
    }
  }
  return r;
}

ExperimentResult execute_experiment(const ExperimentConfig& config) {
  ExperimentResult r;
  try {
    switch (config.kind) {
      case ExperimentKind::pde_selftest: run_pde(config, r); break;
      case ExperimentKind::blowup_verify: run_blowup(config, r); break;
      case ExperimentKind::entropy_scan: run_entropy(config, r); break;
      case ExperimentKind::rho_search: run_rho(config, r); break;
      case ExperimentKind::curve_check: {
        fs::path p = config.get_text("curve");
        if (p.is_relative()) p = fs::path(config.base_dir) / p;
        HoloCurve f;
        try {
          f = load_curve(p.string());
        } catch (const std::exception& e) {
          throw InvalidInput(std::string("curve file: ") + e.what());
        }
        r = check_curve(f, static_cast<int>(config.get_int("chern_grid")), config.get_real("density_window"));
        r.report["curve_file"] = config.get_text("curve");
        return r;
      }
    }
  } catch (const InvalidInput& e) {
    r.status = kStatusInvalid;
    r.message = e.what();
    return r;
  } catch (const std::exception& e) {
    add(r, "pipeline", false, e.what());
  }
  finish(r);
  return r;
}

std::string output_directory(const ExperimentConfig& config) {
  if (!config.out_dir.empty()) return config.out_dir;
  return "runs/" + kind_name(config.kind) + "-seed" + std::to_string(config.seed);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const std::string started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentResult r = execute_experiment(config);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const fs::path dir = output_directory(config);
  fs::create_directories(dir);
  const std::string kind = kind_name(config.kind);
  nlohmann::json body = {{"kind", kind},
                         {"seed", config.seed},
                         {"status", r.status},
                         {"invariants", invariants_json(r.invariants)},
                         {"report", r.report}};
  if (!r.message.empty()) body["message"] = r.message;
  write_text(dir / (kind + ".report.json"), body.dump(2) + "\n");
  std::vector<std::string> files = {kind + ".report.json"};
  for (const auto& [name, text] : r.tables) {
    write_text(dir / name, text);
    files.push_back(name);
  }
  nlohmann::json inv = nlohmann::json::array();
  for (const Invariant& i : r.invariants) inv.push_back({{"name", i.name}, {"pass", i.pass}});
  const nlohmann::json manifest = {{"tool", "brodylab"},
                                   {"version", tool_version()},
                                   {"kind", kind},
                                   {"seed", config.seed},
                                   {"config", config.echo()},
                                   {"started_utc", started},
                                   {"wall_time_s", wall},
                                   {"status", r.status},
                                   {"message", r.message},
                                   {"invariants", inv},
                                   {"headline", r.headline},
                                   {"reports", files}};
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
  return r;
}

nlohmann::json emit_summary(const std::string& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error("summarize: '" + dir + "' is not a directory");
  struct Run {
    std::string path;
    nlohmann::json m;
  };
  std::vector<Run> runs;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().filename() != "manifest.json") continue;
    std::ifstream in(e.path());
    Run run;
    run.path = fs::relative(e.path().parent_path(), dir).generic_string();
    try {
      run.m = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& ex) {
      throw std::runtime_error("summarize: malformed manifest " + e.path().string() + ": " + ex.what());
    }
    runs.push_back(std::move(run));
  }
  if (runs.empty()) throw std::runtime_error("summarize: no manifest.json under '" + dir + "'");
  std::sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) {
    const auto sa = a.m.value("seed", std::uint64_t{0});
    const auto sb = b.m.value("seed", std::uint64_t{0});
    return sa != sb ? sa < sb : a.path < b.path;
  });

  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json listed = nlohmann::json::array();
  nlohmann::json blowup = nlohmann::json::array();
  nlohmann::json best_rho;
  std::size_t failed = 0;
  for (const Run& run : runs) {
    const nlohmann::json& m = run.m;
    listed.push_back({{"run", run.path}, {"kind", m.value("kind", "")}, {"seed", m.value("seed", std::uint64_t{0})},
                      {"status", m.value("status", -1)}});
    for (const auto& inv : m.value("invariants", nlohmann::json::array())) {
      const bool pass = inv.value("pass", false);
      failed += !pass;
      rows.push_back({{"run", run.path},
                      {"seed", m.value("seed", std::uint64_t{0})},
                      {"invariant", inv.value("name", "")},
                      {"pass", pass}});
    }
    const nlohmann::json h = m.value("headline", nlohmann::json::object());
    if (m.value("kind", "") == "rho-search" && h.contains("rho_hat")) {
      if (best_rho.is_null() || h["rho_hat"].get<double>() > best_rho["rho_hat"].get<double>()) {
        best_rho = h;
        best_rho["run"] = run.path;
      }
    }
    if (m.value("kind", "") == "blowup-verify" && h.contains("C4")) {
      nlohmann::json b = h;
      b["run"] = run.path;
      b["seed"] = m.value("seed", std::uint64_t{0});
      blowup.push_back(b);
    }
  }
  std::string status;
  if (rows.empty()) {
    status = "no invariants recorded";
  } else if (failed == 0) {
    status = "all invariants passed";
  } else {
    status = std::to_string(failed) + " of " + std::to_string(rows.size()) + " invariants failed";
  }
  nlohmann::json out = {{"runs", listed}, {"rows", rows}, {"status", status}, {"blowup_constants", blowup}};
  out["rho_hat"] = best_rho.is_null() ? nlohmann::json() : best_rho;
  return out;
}

std::string summary_text(const nlohmann::json& s) {
  std::ostringstream out;
  out << "status: " << s.value("status", "") << '\n';
  out << std::left << std::setw(32) << "run" << std::setw(8) << "seed" << std::setw(32) << "invariant"
      << "result\n";
  for (const auto& row : s["rows"]) {
    out << std::setw(32) << row.value("run", "") << std::setw(8) << row.value("seed", std::uint64_t{0})
        << std::setw(32) << row.value("invariant", "") << (row.value("pass", false) ? "pass" : "FAIL") << '\n';
  }
  if (!s["rho_hat"].is_null()) {
    const auto& r = s["rho_hat"];
    out << "rho_hat " << r.value("rho_hat", 0.0) << " (N=" << r.value("N", 0)
        << ", mean dimension estimate " << r.value("mean_dimension_estimate", 0.0) << ", run " << r.value("run", "")
        << ")\n";
  }
  for (const auto& b : s["blowup_constants"]) {
    out << "blow-up N=" << b.value("N", 0) << " C4=" << b.value("C4", 0.0) << " C4_near=" << b.value("C4_near", 0.0)
        << " R=" << b.value("R", 0.0) << " (run " << b.value("run", "") << ")\n";
  }
  return out.str();
}

}  // namespace brodylab
