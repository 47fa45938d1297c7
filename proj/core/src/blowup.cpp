#include "brodylab/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "brodylab/rng.hpp"
#include "brodylab/spherical.hpp"

namespace brodylab {

double bubble_constant(int N) {
  if (N < 1) throw std::invalid_argument("bubble_constant: N must be >= 1");
  return 4000.0 * std::pow(kPi, -1.5) / std::sqrt(static_cast<double>(N));
}

double bubble_max_derivative(double a, int N) {
  const double sN = std::sqrt(static_cast<double>(N));
  auto dh = [&](double logr) {
    const double r = std::exp(logr);
    return 3.0 * a * r * r * sN / (kSqrtPi * (std::pow(r, 6) + N * a * a));
  };
  // Unimodal in log r; bracket generously around the scale a^{1/3}.
  double lo = std::log(std::cbrt(a)) - 10.0;
  double hi = std::log(std::cbrt(a)) + 10.0;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = dh(x1);
  double f2 = dh(x2);
  for (int it = 0; it < 200; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = dh(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = dh(x1);
    }
  }
  return dh(0.5 * (lo + hi));
}

HoloCurve blow_up_once(const HoloCurve& f, const BubbleSpec& spec, double R, double delta3) {
  if (!(R > 0.0)) throw std::invalid_argument("blow_up_once: R must be positive");
  const HomogVec q = spec.q;
  auto d = [&](Complex z) { return chordal_distance(f.lift(z).value, q); };
  const SupResult s = grid_sup(d, Domain::disk(spec.p, R), R / 16.0, {1, 3});
  if (s.value > delta3) {
    throw PreconditionError("blow_up_once: image of D_R(p) leaves B_delta3(q) at z = (" +
                            std::to_string(s.argmax.real()) + ", " + std::to_string(s.argmax.imag()) +
                            "), distance " + std::to_string(s.value));
  }
  return f.bubbled(spec.p, spec.q, spec.a);
}

std::size_t BlowupPlan::bad_count() const { return static_cast<std::size_t>(std::count(good.begin(), good.end(), false)); }

bool BlowupPlan::feasible() const {
  if (!feasibility) return false;
  for (const ConditionCheck& c : *feasibility) {
    if (!c.pass) return false;
  }
  return true;
}

std::vector<Complex> greedy_centers(const Domain& lambda, double R, double resolution) {
  if (!(R > 0.0)) throw std::invalid_argument("greedy_centers: R must be positive");
  const double h = resolution > 0.0 ? resolution : R / 8.0;
  const double cell = 2.0 * R;
  const double sep2 = cell * cell;
  // Bucket accepted centres by 2R cells; a conflict can only sit in the 3x3 neighbourhood.
  std::unordered_map<std::int64_t, std::vector<Complex>> buckets;
  auto key = [](std::int64_t i, std::int64_t j) { return (i << 32) ^ (j & 0xffffffff); };
  std::vector<Complex> centers;
  for (const Complex& z : lambda.grid_points(h)) {
    const auto ci = static_cast<std::int64_t>(std::floor(z.real() / cell));
    const auto cj = static_cast<std::int64_t>(std::floor(z.imag() / cell));
    bool far = true;
    for (std::int64_t di = -1; di <= 1 && far; ++di) {
      for (std::int64_t dj = -1; dj <= 1 && far; ++dj) {
        const auto it = buckets.find(key(ci + di, cj + dj));
        if (it == buckets.end()) continue;
        for (const Complex& c : it->second) {
          if (std::norm(z - c) <= sep2) {
            far = false;
            break;
          }
        }
      }
    }
    if (far) {
      centers.push_back(z);
      buckets[key(ci, cj)].push_back(z);
    }
  }
  return centers;
}

bool centers_cover(const Domain& lambda, const std::vector<Complex>& centers, double R, double resolution) {
  const double r2 = 4.0 * R * R;
  for (const Complex& z : lambda.grid_points(resolution)) {
    bool hit = false;
    for (const Complex& c : centers) {
      if (std::norm(z - c) <= r2) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

BlowupPlan plan_centers(const HoloCurve& f, const Domain& lambda, double R, double delta3, double resolution) {
  if (!(delta3 > 0.0)) throw std::invalid_argument("plan_centers: delta3 must be positive");
  BlowupPlan plan;
  plan.lambda = lambda;
  plan.centers = greedy_centers(lambda, R, resolution);
  plan.constants.delta3 = delta3;
  plan.constants.R = R;
  plan.constants.R1 = 10.0 * R / delta3;
  plan.good_threshold = delta3 / (4.0 * R * kSqrtPi);
  plan.bubble_a = bubble_constant(f.dim());
  auto df = [&](Complex z) { return std::sqrt(spherical_derivative_sq(f.lift(z))); };
  for (const Complex& p : plan.centers) {
    const double sup = grid_sup(df, Domain::disk(p, R), R / 16.0, {1, 5}).value;
    plan.center_sups.push_back(sup);
    plan.good.push_back(sup > plan.good_threshold);
    HomogVec q = f.lift(p).value;
    const double n = q.norm();
    q *= 1.0 / n;
    plan.targets.push_back(q);
  }
  return plan;
}

namespace {

struct Margins {
  double m_sum, m_lip, m_gain;
};

Margins condition_margins(Complex z, const std::vector<Complex>& centers, const BlowupConstants& k) {
  double s3_far = 0.0;
  double s4_half = 0.0;
  double p3_half = 1.0;
  double pm_far = 1.0;
  double s4_far = 0.0;
  double p3_far = 1.0;
  for (const Complex& p : centers) {
    const double r = std::abs(z - p);
    const double t3 = k.C4 / (r * r * r);
    const double t4 = t3 / r;
    if (r > k.R) {
      s3_far += t3;
      pm_far *= 1.0 - t3;
      s4_far += t4;
      p3_far *= 1.0 + t3;
    }
    if (r > 0.5 * k.R) {
      s4_half += t4;
      p3_half *= 1.0 + t3;
    }
  }
  const double base = std::min(k.delta3 / (4.0 * k.R * kSqrtPi), 0.01);
  Margins m;
  m.m_sum = 0.5 * k.delta3 - s3_far;
  m.m_lip = std::min(k.lambda, 2.0) - (1.0 + s4_half) * p3_half;
  m.m_gain = base * pm_far - s4_far * p3_far - k.delta3 / (10.0 * k.R);
  return m;
}

std::array<ConditionCheck, 3> evaluate_conditions(const Domain& lambda, const std::vector<Complex>& centers,
                                                  const BlowupConstants& k, double probe_resolution,
                                                  bool stop_on_failure = false) {
  const double h = probe_resolution > 0.0 ? probe_resolution : k.R / 8.0;
  const Box b = lambda.bbox().grown(3.0 * k.R);
  const Domain window = Domain::rect({b.x0, b.y0}, b.width(), b.height());
  std::array<ConditionCheck, 3> out;
  for (ConditionCheck& c : out) c.worst_margin = std::numeric_limits<double>::infinity();
  for (const Complex& z : window.grid_points(h)) {
    const Margins m = condition_margins(z, centers, k);
    const double ms[3] = {m.m_sum, m.m_lip, m.m_gain};
    for (int i = 0; i < 3; ++i) {
      ++out[i].probes;
      if (ms[i] < out[i].worst_margin) {
        out[i].worst_margin = ms[i];
        out[i].worst_z = z;
      }
    }
    if (stop_on_failure && (m.m_sum <= 0.0 || m.m_lip <= 0.0 || m.m_gain <= 0.0)) break;
  }
  for (ConditionCheck& c : out) c.pass = c.worst_margin > 0.0;
  return out;
}

}  // namespace

BlowupPlan check_feasibility(BlowupPlan plan, double probe_resolution) {
  plan.feasibility = evaluate_conditions(plan.lambda, plan.centers, plan.constants, probe_resolution);
  return plan;
}

double choose_radius(const Domain& lambda, double delta3, double C4, double lambda_bound, double R2) {
  auto passes = [&](double R) {
    BlowupConstants k;
    k.delta3 = delta3;
    k.R = R;
    k.R2 = R2;
    k.C4 = C4;
    k.lambda = lambda_bound;
    k.R1 = 10.0 * R / delta3;
    for (const ConditionCheck& c : evaluate_conditions(lambda, greedy_centers(lambda, R), k, 0.0, true)) {
      if (!c.pass) return false;
    }
    return true;
  };
  double lo = R2;
  if (passes(lo)) return lo;
  double hi = 2.0 * lo;
  while (!passes(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e7) throw NumericalError("choose_radius: no feasible R below 1e7");
  }
  while (hi - lo > 5e-3 * hi) {
    const double mid = 0.5 * (lo + hi);
    (passes(mid) ? hi : lo) = mid;
  }
  return hi;
}

double self_consistent_radius(double delta3, double C4, double lambda_bound, double R2) {
  double R = R2;
  for (int it = 0; it < 12; ++it) {
    const double next = choose_radius(Domain::square({0.0, 0.0}, 3.0 * R), delta3, C4, lambda_bound, R2);
    if (std::abs(next - R) <= 5e-3 * next) return std::max(next, R);
    R = next;
  }
  throw NumericalError("self_consistent_radius: no fixed point after 12 iterations");
}

double bubble_window_sup(const HoloCurve& bubbled, Complex p, double R) {
  auto df = [&](Complex z) { return std::sqrt(spherical_derivative_sq(bubbled.lift(z))); };
  return grid_sup(df, Domain::disk(p, 0.5 * R), R / 128.0).value;
}

HoloCurve resolve_with_plan(const HoloCurve& g, const BlowupPlan& plan) {
  HoloCurve cur = g;
  for (std::size_t i = 0; i < plan.centers.size(); ++i) {
    if (plan.good[i]) continue;
    const BubbleSpec spec{plan.centers[i], plan.targets[i], plan.bubble_a};
    try {
      cur = blow_up_once(cur, spec, plan.constants.R, plan.constants.delta3);
    } catch (const PreconditionError& e) {
      throw PreconditionError("resolve: iteration " + std::to_string(i) + ": " + e.what());
    }
  }
  return cur;
}

ResolveResult resolve(const HoloCurve& f, const Domain& lambda, double lambda_bound, const BlowupConstants& constants) {
  if (!(lambda_bound > 1.0 && lambda_bound < 2.0)) throw std::invalid_argument("resolve: need 1 < lambda < 2");
  BlowupPlan plan = plan_centers(f, lambda, constants.R, constants.delta3);
  plan.constants = constants;
  plan.constants.lambda = lambda_bound;
  plan.constants.R1 = 10.0 * constants.R / constants.delta3;
  plan = check_feasibility(std::move(plan));
  if (!plan.feasible()) {
    static const char* names[3] = {"centre_sum", "lipschitz_product", "min_gain"};
    std::string failed;
    for (int i = 0; i < 3; ++i) {
      if (!(*plan.feasibility)[i].pass) failed += std::string(failed.empty() ? "" : ", ") + names[i];
    }
    throw PreconditionError("resolve: feasibility failure " + failed);
  }
  HoloCurve out = resolve_with_plan(f, plan);
  return {out, std::move(plan)};
}

ResolveCheck check_resolution(const HoloCurve& resolved, const BlowupPlan& plan, double lipschitz_resolution) {
  ResolveCheck out;
  const Box b = plan.lambda.bbox().grown(3.0 * plan.constants.R);
  const Domain window = Domain::rect({b.x0, b.y0}, b.width(), b.height());
  out.lipschitz = lipschitz_sup(resolved, window, lipschitz_resolution).value;
  out.lipschitz_ok = out.lipschitz <= plan.constants.lambda;
  const NondegeneracyResult nd = is_nondegenerate(resolved, plan.constants.R1, plan.lambda, plan.constants.R / 4.0);
  out.nondegenerate = nd.ok;
  out.worst_sup = nd.worst_sup;
  out.worst_center = nd.worst_center;
  return out;
}

namespace {

struct Fits {
  double c_dist = 0.0, c_deriv = 0.0, c_near = 1.0, c_fwd = 0.0, c_back = 0.0;
  Complex z_dist{}, z_deriv{}, z_near{}, z_fwd{}, z_back{};
  std::array<double, 3> dev{};
  std::array<double, 3> c_dist_regime{};
};

Fits fit_once(const HoloCurve& f, const HoloCurve& fh, const HoloCurve& g1, const HoloCurve& g1h, const HoloCurve& g2,
              const HoloCurve& g2h, const BubbleSpec& spec, double R, int samples, std::uint64_t seed, double near_sup) {
  Fits out;
  Rng rng(seed);
  const double bounds[4] = {0.0, 1.0, 0.5 * R, 4.0 * R};
  for (int regime = 0; regime < 3; ++regime) {
    const double r0 = bounds[regime];
    const double r1 = bounds[regime + 1];
    // One sample in eight sits on the inner ring (|z-p| = 1 for the near regime),
    // where every far-field bound is tightest.
    const double ring = regime == 0 ? r1 : r0;
    for (int s = 0; s < samples; ++s) {
      const double u = rng.uniform();
      const double r = s % 8 == 0 ? ring : std::sqrt(r0 * r0 + u * (r1 * r1 - r0 * r0));
      const double th = 2.0 * kPi * rng.uniform();
      if (r == 0.0) continue;
      const Complex z = spec.p + std::polar(r, th);
      const double r3 = r * r * r;
      const double d_ffh = chordal_distance(f.lift(z).value, fh.lift(z).value);
      out.dev[regime] = std::max(out.dev[regime], d_ffh);
      out.c_dist_regime[regime] = std::max(out.c_dist_regime[regime], d_ffh * r3);
      if (d_ffh * r3 > out.c_dist) {
        out.c_dist = d_ffh * r3;
        out.z_dist = z;
      }
      const double dg = chordal_distance(g1.lift(z).value, g2.lift(z).value);
      const double dgh = chordal_distance(g1h.lift(z).value, g2h.lift(z).value);
      if (r >= 1.0) {
        const double df = std::sqrt(spherical_derivative_sq(f.lift(z)));
        const double dfh = std::sqrt(spherical_derivative_sq(fh.lift(z)));
        const double c_deriv = std::abs(df - dfh) / (df / r3 + 1.0 / (r3 * r));
        if (c_deriv > out.c_deriv) {
          out.c_deriv = c_deriv;
          out.z_deriv = z;
        }
        if (dg > 0.0 && dgh > 0.0) {
          const double c_fwd = r3 * std::max(0.0, dgh / dg - 1.0);
          const double c_back = r3 * std::max(0.0, dg / dgh - 1.0);
          if (c_fwd > out.c_fwd) {
            out.c_fwd = c_fwd;
            out.z_fwd = z;
          }
          if (c_back > out.c_back) {
            out.c_back = c_back;
            out.z_back = z;
          }
        }
      } else if (dg > 0.0) {
        double c = dgh / dg;
        if (near_sup > 0.0) c = std::max(c, dg / near_sup);
        if (c > out.c_near) {
          out.c_near = c;
          out.z_near = z;
        }
      }
    }
  }
  return out;
}

}  // namespace

bool BlowupReport::pass() const {
  for (const InequalityFit& f : fits) {
    if (!f.pass()) return false;
  }
  return true;
}

BlowupReport verify_blowup_report(const HoloCurve& f, const HoloCurve& g1, const HoloCurve& g2, const BubbleSpec& spec,
                                  double R, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("verify_blowup_report: samples must be positive");
  BlowupReport rep;
  rep.spec = spec;
  rep.R = R;
  rep.samples = samples;
  rep.seed = seed;
  const HoloCurve fh = f.bubbled(spec.p, spec.q, spec.a);
  const HoloCurve g1h = g1.bubbled(spec.p, spec.q, spec.a);
  const HoloCurve g2h = g2.bubbled(spec.p, spec.q, spec.a);
  const double near_sup = sup_distance(g1h, g2h, Domain::disk(spec.p, 2.0), 0.05);
  const Fits a = fit_once(f, fh, g1, g1h, g2, g2h, spec, R, samples, seed, near_sup);
  const Fits b = fit_once(f, fh, g1, g1h, g2, g2h, spec, R, 2 * samples, seed, near_sup);
  auto make = [](const char* name, double c, double c2, Complex z) {
    InequalityFit fit;
    fit.name = name;
    fit.constant = c;
    fit.constant_doubled = c2;
    fit.worst_z = z;
    fit.finite = std::isfinite(c) && std::isfinite(c2);
    fit.stable = std::abs(c2 - c) <= 0.1 * std::max(std::abs(c), 1e-12) || (c == 0.0 && c2 == 0.0);
    return fit;
  };
  rep.fits.push_back(make("distance: d(f,f^) <= C/|z-p|^3", a.c_dist, b.c_dist, b.z_dist));
  rep.fits.push_back(make("derivative: ||df|-|df^|| <= C|df|/|z-p|^3 + C/|z-p|^4", a.c_deriv, b.c_deriv, b.z_deriv));
  rep.fits.push_back(make("near_pair: near-centre pair distortion", a.c_near, b.c_near, b.z_near));
  rep.fits.push_back(make("pair_forward: d(f^,g^) <= (1+C/|z-p|^3) d(f,g)", a.c_fwd, b.c_fwd, b.z_fwd));
  rep.fits.push_back(make("pair_backward: d(f,g) <= (1+C/|z-p|^3) d(f^,g^)", a.c_back, b.c_back, b.z_back));
  rep.regime_deviation = b.dev;
  rep.regime_c_dist = b.c_dist_regime;
  rep.C4 = std::max({1.0, b.c_dist, b.c_deriv, b.c_fwd, b.c_back});
  rep.C4_near = b.c_near;
  return rep;
}

BlowupReport pure_bubble_report(int N, double R, int samples, std::uint64_t seed) {
  if (N < 1) throw std::invalid_argument("pure_bubble_report: N must be >= 1");
  HomogVec e0(N + 1);
  e0[0] = 1.0;
  HomogVec u(N + 1);
  HomogVec v(N + 1);
  u[0] = 1.0;
  v[0] = 1.0;
  for (int i = 1; i <= N; ++i) {
    // Pair difference parallel to the bubble direction: the worst alignment.
    u[i] = Complex(0.004, 0.0);
    v[i] = Complex(0.0, -0.003);
  }
  const HoloCurve f = HoloCurve::constant(e0);
  const BubbleSpec spec{0.0, e0, bubble_constant(N)};
  return verify_blowup_report(f, HoloCurve::constant(u), HoloCurve::constant(v), spec, R, samples, seed);
}

double fit_c4(int N, double R, int samples, std::uint64_t seed) { return pure_bubble_report(N, R, samples, seed).C4; }

DistortionFit fit_pairwise_distortion(const HoloCurve& g1, const HoloCurve& g2, const BlowupPlan& plan, int samples,
                                      std::uint64_t seed) {
  const HoloCurve p1 = resolve_with_plan(g1, plan);
  const HoloCurve p2 = resolve_with_plan(g2, plan);
  const Box b = plan.lambda.bbox().grown(3.0 * plan.constants.R);
  Rng rng(seed);
  DistortionFit out;
  out.samples = samples;
  for (int s = 0; s < samples; ++s) {
    const Complex z(rng.uniform(b.x0, b.x1), rng.uniform(b.y0, b.y1));
    const double dg = chordal_distance(g1.lift(z).value, g2.lift(z).value);
    const double dp = chordal_distance(p1.lift(z).value, p2.lift(z).value);
    if (dg > 0.0) out.forward = std::max(out.forward, dp / dg);
    const double local = sup_distance(p1, p2, Domain::disk(z, 3.0), 0.25);
    if (local > 0.0) out.backward = std::max(out.backward, dg / local);
  }
  return out;
}

namespace {

nlohmann::json cjson(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json check_json(const ConditionCheck& c) {
  return {{"pass", c.pass}, {"worst_margin", c.worst_margin}, {"worst_z", cjson(c.worst_z)}, {"probes", c.probes}};
}

}  // namespace

nlohmann::json to_json(const BlowupPlan& plan) {
  nlohmann::json centers = nlohmann::json::array();
  for (std::size_t i = 0; i < plan.centers.size(); ++i) {
    centers.push_back({{"p", cjson(plan.centers[i])}, {"good", static_cast<bool>(plan.good[i])}, {"sup_df", plan.center_sups[i]}});
  }
  const BlowupConstants& k = plan.constants;
  nlohmann::json j = {
      {"lambda_domain", plan.lambda.describe()},
      {"centers", centers},
      {"bad_count", plan.bad_count()},
      {"good_threshold", plan.good_threshold},
      {"bubble_a", plan.bubble_a},
      {"constants",
       {{"delta3", k.delta3}, {"R", k.R}, {"R2", k.R2}, {"C4", k.C4}, {"lambda", k.lambda}, {"R1", k.R1}}},
  };
  if (plan.feasibility) {
    j["feasibility"] = {{"centre_sum", check_json((*plan.feasibility)[0])},
                        {"lipschitz_product", check_json((*plan.feasibility)[1])},
                        {"min_gain", check_json((*plan.feasibility)[2])}};
  }
  return j;
}

nlohmann::json to_json(const BlowupReport& report) {
  nlohmann::json fits = nlohmann::json::array();
  for (const InequalityFit& f : report.fits) {
    fits.push_back({{"inequality", f.name},
                    {"fitted_constant", f.constant},
                    {"fitted_constant_doubled_samples", f.constant_doubled},
                    {"worst_z", cjson(f.worst_z)},
                    {"pass", f.pass()}});
  }
  return {{"p", cjson(report.spec.p)},
          {"N", report.spec.N()},
          {"a", report.spec.a},
          {"R", report.R},
          {"samples", report.samples},
          {"seed", report.seed},
          {"inequalities", fits},
          {"regime_max_deviation", report.regime_deviation},
          {"regime_distance_constant", report.regime_c_dist},
          {"C4", report.C4},
          {"C4_near", report.C4_near},
          {"pass", report.pass()}};
}

}  // namespace brodylab
