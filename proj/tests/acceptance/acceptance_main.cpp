// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "brodylab/blowup.hpp"
#include "brodylab/curvature.hpp"
#include "brodylab/curve_io.hpp"
#include "brodylab/dynamics.hpp"
#include "brodylab/experiment.hpp"
#include "brodylab/folner.hpp"
#include "brodylab/metric_space.hpp"
#include "brodylab/rho_search.hpp"
#include "brodylab/rng.hpp"
#include "brodylab/spherical.hpp"

using namespace brodylab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

Complex cnormal(Rng& rng, double scale = 1.0) { return Complex(rng.normal(), rng.normal()) * scale; }

// Degree-k map to CP^N: monic z^k in the first coordinate, lower-degree
// perturbations elsewhere so the point at infinity is [1:0:...:0].
HoloCurve random_rational(Rng& rng, int k, int N) {
  for (;;) {
    std::vector<Polynomial> comps;
    std::vector<Complex> c0(k + 1);
    for (int j = 0; j < k; ++j) c0[j] = cnormal(rng, 0.5);
    c0[k] = 1.0;
    comps.emplace_back(c0);
    for (int i = 1; i <= N; ++i) {
      std::vector<Complex> c(k);
      for (auto& x : c) x = cnormal(rng, 0.5);
      comps.emplace_back(c);
    }
    try {
      return HoloCurve::rational(comps);
    } catch (const PreconditionError&) {
    }
  }
}

HoloCurve elliptic_pair(const PlaneLattice& L, int i, int j) {
  EllipticComponent one{}, m{};
  one[0][0] = 1.0;
  m[i][j] = 1.0;
  return HoloCurve::elliptic(L, {one, m});
}

Outcome degree_energy() {
  Rng rng(101);
  double worst_low = 1e9, worst_high = -1e9;
  bool ok = true;
  for (int t = 0; t < 10; ++t) {
    const int k = 1 + static_cast<int>(rng.below(3));
    const int N = 1 + static_cast<int>(rng.below(3));
    const double e = energy(random_rational(rng, k, N), Domain::disk(0.0, 40.0));
    worst_low = std::min(worst_low, e - (k - 0.01));
    worst_high = std::max(worst_high, e - k);
    ok = ok && e >= k - 0.01 && e <= k;
  }
  return {ok, "min(E - (k-0.01)) = " + fmt(worst_low) + ", max(E - k) = " + fmt(worst_high)};
}

Outcome closed_form_vs_laplacian() {
  Rng rng(202);
  double worst = 0.0;
  int pairs = 0;
  for (int t = 0; t < 100; ++t) {
    const auto f = random_rational(rng, 1 + static_cast<int>(rng.below(3)), 1 + static_cast<int>(rng.below(3)));
    for (int s = 0; s < 10; ++s, ++pairs) {
      const Complex z(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
      worst = std::max(worst, std::abs(spherical_derivative(f, z) - spherical_derivative_laplacian(f, z, 1e-3)));
    }
  }
  return {worst <= 1e-4, std::to_string(pairs) + " pairs, max diff " + fmt(worst)};
}

Outcome distance_relation() {
  Rng rng(303);
  auto point = [&](int N) {
    HomogVec v(N + 1);
    for (int i = 0; i <= N; ++i) v[i] = cnormal(rng);
    return ProjectivePoint(v);
  };
  double worst = 0.0, worst_tri = -1e9;
  for (int t = 0; t < 1000; ++t) {
    const int N = 1 + t % 3;
    const auto a = point(N), b = point(N);
    worst = std::max(worst, std::abs(chordal_distance(a, b) - std::sin(kSqrtPi * fs_distance(a, b))));
  }
  for (int t = 0; t < 1000; ++t) {
    const int N = 1 + t % 3;
    const auto a = point(N), b = point(N), c = point(N);
    worst_tri = std::max(worst_tri, chordal_distance(a, c) - chordal_distance(a, b) - chordal_distance(b, c));
  }
  return {worst <= 1e-12 && worst_tri <= 1e-15,
          "max |d - sin(sqrt(pi) d_FS)| = " + fmt(worst) + ", max triangle excess = " + fmt(worst_tri)};
}

std::string invariant_summary(const ExperimentResult& r) {
  std::string s;
  for (const auto& inv : r.invariants) s += (s.empty() ? "" : "; ") + inv.name + (inv.pass ? " ok" : " FAIL") + " (" + inv.detail + ")";
  return s;
}

Outcome helmholtz_suite() {
  auto cfg = parse_config("kind = pde-selftest\nseed = 1\n[pde-selftest]\nsamples = 100\n", "acceptance");
  const auto r = execute_experiment(cfg);
  return {r.status == kStatusOk, invariant_summary(r)};
}

Outcome chern_numbers() {
  const PlaneLattice L = PlaneLattice::square(1.0);
  const double c4 = chern_integral(elliptic_pair(L, 1, 0), L, 512);
  const double c6 = chern_integral(elliptic_pair(L, 0, 1), L, 512);
  return {std::abs(c4 - 4.0) <= 0.02 && std::abs(c6 - 6.0) <= 0.02, "[1:wp] " + fmt(c4, 8) + ", [1:wp'] " + fmt(c6, 8)};
}

Outcome blowup_suite() {
  std::string detail;
  bool ok = true;
  for (int N = 1; N <= 3; ++N) {
    const double m = bubble_max_derivative(bubble_constant(N), N);
    ok = ok && std::abs(m - 0.1) <= 1e-8;
    detail += "N=" + std::to_string(N) + " max|dh| " + fmt(m, 12) + "; ";
  }
  auto cfg = parse_config("kind = blowup-verify\nseed = 1\n[blowup-verify]\ninstances = 20\nsynthetic = 10\n", "acceptance");
  const auto r = execute_experiment(cfg);
  ok = ok && r.status == kStatusOk;
  return {ok, detail + invariant_summary(r)};
}

FiniteMetricSpace random_space(Rng& rng, std::size_t n) {
  const int dim = 1 + static_cast<int>(rng.below(3));
  const bool sup = rng.below(2) == 0;
  std::vector<double> x(n * dim);
  for (auto& v : x) v = rng.uniform();
  return FiniteMetricSpace::from_function(n, [&](std::size_t i, std::size_t j) {
    double d = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double t = std::abs(x[i * dim + k] - x[j * dim + k]);
      d = sup ? std::max(d, t) : d + t * t;
    }
    return sup ? d : std::sqrt(d);
  });
}

Outcome counting_suite() {
  Rng rng(707);
  int chain_fail = 0, brute_fail = 0, brute_cases = 0, banach_fail = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 5 + rng.below(60);
    const auto X = random_space(rng, n);
    const double eps = rng.uniform(0.1, 0.6);
    const double delta = 0.49 * eps;
    const std::size_t sep = greedy_separated(X, eps).size();
    const std::size_t cover = greedy_cover(X, eps);
    const std::size_t sep_small = greedy_separated(X, delta).size();
    if (!(sep <= cover && cover <= sep_small)) ++chain_fail;
    if (n <= 15) {
      ++brute_cases;
      const std::size_t es = exact_separated_count(X, eps), ec = exact_cover_count(X, eps);
      if (!(sep <= es && ec <= cover && es <= ec)) ++brute_fail;
    }
  }
  // Extra brute-force cases so small spaces are always represented.
  for (int t = 0; t < 20; ++t, ++brute_cases) {
    const auto X = random_space(rng, 4 + rng.below(12));
    const double eps = rng.uniform(0.1, 0.6);
    const std::size_t sep = greedy_separated(X, eps).size(), cover = greedy_cover(X, eps);
    const std::size_t es = exact_separated_count(X, eps), ec = exact_cover_count(X, eps);
    if (!(sep <= es && ec <= cover && es <= ec)) ++brute_fail;
  }
  std::string banach;
  for (int n = 1; n <= 3; ++n) {
    for (double r : {1.0, 2.0}) {
      for (double eps : {0.25, 0.5, 1.0}) {
        const int per_axis = 2 * static_cast<int>(std::ceil(2.0 * r / eps)) + 1;
        const auto count = point_cloud_separated_count(sup_ball_grid(n, r, per_axis), n, eps, Norm::sup);
        if (static_cast<double>(count) > banach_ball_bound(n, r, eps)) ++banach_fail;
      }
    }
  }
  return {chain_fail == 0 && brute_fail == 0 && banach_fail == 0,
          "chain failures " + std::to_string(chain_fail) + "/50, brute-force failures " + std::to_string(brute_fail) + "/" +
              std::to_string(brute_cases) + ", Banach-ball failures " + std::to_string(banach_fail) + "/18"};
}

Outcome ornstein_weiss() {
  const PeriodicEnergyFunctional h(elliptic_pair(PlaneLattice::square(1.0), 1, 0), 64, 4);
  std::vector<Domain> squares, disks;
  for (double n : {4.0, 8.0, 16.0, 32.0}) {
    squares.push_back(Domain::square(0.0, n));
    disks.push_back(Domain::disk(0.0, n / 2.0));
  }
  const auto sq = ornstein_weiss_trace(std::cref(h), squares);
  const auto dk = ornstein_weiss_trace(std::cref(h), disks);
  const double mean = h.cell_mean();
  const double sq_last = sq.values.back(), dk_last = dk.values.back();
  const bool converged = std::abs(sq_last - mean) <= 0.02 * mean && sq.spread <= 0.02;
  const bool agree = std::abs(dk_last - sq_last) <= 0.02 * sq_last;
  return {converged && agree, "cell mean " + fmt(mean) + ", squares last " + fmt(sq_last) + " spread " + fmt(sq.spread) +
                                  ", disks last " + fmt(dk_last) + " spread " + fmt(dk.spread)};
}

Outcome rho_suite() {
  RhoSearchOptions o1;
  const auto r1 = maximize_rho(rho_family("elliptic-n1"), o1);
  RhoSearchOptions o2;
  o2.warm_start = embed_n1_in_n2(r1.best.params);
  const auto r2 = maximize_rho(rho_family("elliptic-n2"), o2);
  const bool range = r1.rho_hat > 0.0 && r1.rho_hat < 1.0 && r2.rho_hat > 0.0 && r2.rho_hat < 1.0;
  const bool stable = std::abs(r1.delta) <= 0.01 && std::abs(r2.delta) <= 0.01;
  const bool dominated = r2.rho_hat >= r1.rho_hat;
  const double md1 = mean_dimension_estimate(1, r1.rho_hat), md2 = mean_dimension_estimate(2, r2.rho_hat);
  const bool formula = md1 == 4.0 * r1.rho_hat && md2 == 6.0 * r2.rho_hat;
  return {range && stable && dominated && formula,
          "rho1 " + fmt(r1.rho_hat) + " (delta " + fmt(r1.delta, 3) + "), rho2 " + fmt(r2.rho_hat) + " (delta " +
              fmt(r2.delta, 3) + "), mdim " + fmt(md1) + ", " + fmt(md2)};
}

Outcome growth_check() {
  const auto n = brody_normalize(elliptic_pair(PlaneLattice::square(1.0), 1, 0));
  const Domain lambda = Domain::square(0.0, n.lambda);
  const auto rep = entropy_growth_check(n.curve, 5.0, lambda, 0.05, 0.1, 30, 1, 0.25);
  std::string counts;
  for (const auto& r : rep.runs) counts += std::to_string(r.count) + " ";
  for (const auto& r : rep.runs_doubled) counts += std::to_string(r.count) + " ";
  return {rep.pass(), "C2 " + fmt(rep.fit.C2) + " -> " + fmt(rep.fit_doubled.C2) + ", C3 " + fmt(rep.fit.C3) + " -> " +
                          fmt(rep.fit_doubled.C3) + ", counts " + counts + (rep.bound_holds ? "bound ok" : "bound FAIL") +
                          (rep.scaling_ok ? ", scaling ok" : ", scaling FAIL")};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Every file byte-identical; manifests compared without their clock fields.
bool same_outputs(const fs::path& a, const fs::path& b, std::string& why) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(a)) names.push_back(e.path().filename().string());
  std::size_t nb = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(b)) ++nb;
  if (names.size() != nb) {
    why = "file sets differ";
    return false;
  }
  for (const auto& name : names) {
    if (!fs::exists(b / name)) {
      why = name + " missing";
      return false;
    }
    if (name == "manifest.json") {
      auto ma = nlohmann::json::parse(slurp(a / name)), mb = nlohmann::json::parse(slurp(b / name));
      for (auto* m : {&ma, &mb}) {
        m->erase("started_utc");
        m->erase("wall_time_s");
        (*m)["config"].erase("out");
      }
      if (ma != mb) {
        why = "manifest differs";
        return false;
      }
    } else if (slurp(a / name) != slurp(b / name)) {
      why = name + " differs";
      return false;
    }
  }
  return true;
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "brodylab_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  save_curve((root / "wp.curve").string(), elliptic_pair(PlaneLattice({1.0, 0.0}, {0.3, 1.2}), 1, 0));
  const std::vector<std::pair<std::string, std::string>> configs = {
      {"pde", "kind = pde-selftest\nseed = 5\n[pde-selftest]\nsamples = 5\ngrid = 32\nkappa_budget = 10\n"},
      {"blowup", "kind = blowup-verify\nseed = 5\n[blowup-verify]\nsamples = 100\ninstances = 3\nsynthetic = 1\n"},
      {"entropy", "kind = entropy-scan\nseed = 5\n[entropy-scan]\neps = 0.4, 0.2, 0.04\nsides = 1\n"},
      {"rho", "kind = rho-search\nseed = 5\n[rho-search]\nbudget = 6\nrestarts = 1\nquadrature_grid = 32\n"
              "sup_grid = 32\nmax_delta = 0.05\nl_sweep = 1\n"},
      {"curve", "kind = curve-check\nseed = 5\n[curve-check]\ncurve = wp.curve\nchern_grid = 64\n"},
  };
  std::string detail;
  bool ok = true;
  for (const auto& [name, text] : configs) {
    fs::path dirs[2] = {root / (name + "_a"), root / (name + "_b")};
    int status = -1;
    for (const auto& d : dirs) {
      auto cfg = parse_config(text, name);
      cfg.base_dir = root.string();
      cfg.out_dir = d.string();
      status = run_experiment(cfg).status;
    }
    std::string why;
    const bool same = same_outputs(dirs[0], dirs[1], why);
    ok = ok && same;
    detail += name + (same ? " identical" : " " + why) + " (status " + std::to_string(status) + "); ";
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 degree-energy identity", degree_energy},
      {"2 closed-form vs Laplacian derivative", closed_form_vs_laplacian},
      {"3 chordal/Fubini-Study relation and triangle inequality", distance_relation},
      {"4 Helmholtz solver suite", helmholtz_suite},
      {"5 Chern integrals of [1:wp] and [1:wp']", chern_numbers},
      {"6 blow-up suite", blowup_suite},
      {"7 counting suite", counting_suite},
      {"8 Ornstein-Weiss convergence", ornstein_weiss},
      {"9 rho search", rho_suite},
      {"10 counting-bound growth check", growth_check},
      {"11 determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("[%s] %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
