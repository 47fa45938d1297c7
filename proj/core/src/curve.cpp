#include "brodylab/curve.hpp"

#include <variant>

namespace brodylab {

namespace {

struct RationalData {
  std::vector<Polynomial> comps;
  std::vector<Polynomial> derivs;
};

struct EllipticData {
  PlaneLattice lattice;
  std::vector<EllipticComponent> comps;
  int max_order = 0;
};

struct TransformedData {
  HoloCurve base;
  Complex alpha;
  Complex beta;
};

struct BubbledData {
  HoloCurve base;
  Complex p;
  HomogVec q;
  double a;
  ChartReflection chart;
};

// Cauchy interpolation is used within this fraction of the cell scale from a
// lattice point; the direct formula loses ~eps/|w| there.
constexpr double kCauchyInner = 1e-3;
constexpr double kCauchyRadius = 2e-2;
constexpr int kCauchyPoints = 16;

Jet elliptic_direct(const EllipticData& d, Complex w, Complex z) {
  const int n = static_cast<int>(d.comps.size());
  Jet jet{HomogVec(n), HomogVec(n)};
  const WeierstrassValue wp = weierstrass_p_near_origin(z - d.lattice.nearest_point(z), d.lattice);
  const Complex ddp = 6.0 * wp.p * wp.p - 0.5 * d.lattice.g2();
  const Complex w2 = w * w;
  const Complex w3 = w2 * w;
  // P = w^2 wp and Q = w^3 wp' are holomorphic at w = 0.
  const Complex P = w2 * wp.p;
  const Complex dP = 2.0 * w * wp.p + w2 * wp.dp;
  const Complex Q = w3 * wp.dp;
  const Complex dQ = 3.0 * w2 * wp.dp + w3 * ddp;
  std::array<Complex, 4> pw{1.0, P, P * P, P * P * P};
  std::array<Complex, 16> wpow{};
  wpow[0] = 1.0;
  for (int k = 1; k <= d.max_order; ++k) wpow[k] = wpow[k - 1] * w;
  for (int c = 0; c < n; ++c) {
    Complex val = 0.0;
    Complex der = 0.0;
    for (int i = 0; i <= 3; ++i) {
      for (int j = 0; j <= 1; ++j) {
        const Complex coef = d.comps[c][i][j];
        if (coef == Complex(0.0, 0.0)) continue;
        const int e = d.max_order - elliptic_pole_order(i, j);
        const Complex qj = j ? Q : Complex(1.0);
        const Complex we = wpow[e];
        val += coef * we * pw[i] * qj;
        Complex t = 0.0;
        if (e > 0) t += static_cast<double>(e) * wpow[e - 1] * pw[i] * qj;
        if (i > 0) t += static_cast<double>(i) * we * pw[i - 1] * dP * qj;
        if (j > 0) t += we * pw[i] * dQ;
        der += coef * t;
      }
    }
    jet.value[c] = val;
    jet.deriv[c] = der;
  }
  return jet;
}

Jet elliptic_jet(const EllipticData& d, Complex z, Complex anchor) {
  const int n = static_cast<int>(d.comps.size());
  if (d.max_order == 0) {
    Jet jet{HomogVec(n), HomogVec(n)};
    for (int c = 0; c < n; ++c) jet.value[c] = d.comps[c][0][0];
    return jet;
  }
  const Complex omega = d.lattice.nearest_point(anchor);
  const Complex w = z - omega;
  const double scale = std::abs(d.lattice.reduced_w1());
  if (std::abs(w) >= kCauchyInner * scale) return elliptic_direct(d, w, z);

  // Taylor coefficients from samples on a circle around omega.
  const double rho = kCauchyRadius * scale;
  std::array<std::array<Complex, kCauchyPoints>, kMaxComponents> coef{};
  for (int m = 0; m < kCauchyPoints; ++m) {
    const double th = 2.0 * kPi * m / kCauchyPoints;
    const Complex e = std::polar(1.0, th);
    const Jet s = elliptic_direct(d, rho * e, omega + rho * e);
    for (int k = 0; k < kCauchyPoints; ++k) {
      const Complex rot = std::polar(1.0, -th * k);
      for (int c = 0; c < n; ++c) coef[c][k] += s.value[c] * rot;
    }
  }
  Jet jet{HomogVec(n), HomogVec(n)};
  const Complex t = w / rho;
  for (int c = 0; c < n; ++c) {
    Complex val = 0.0;
    Complex der = 0.0;
    for (int k = kCauchyPoints - 1; k >= 0; --k) {
      der = der * t + val;
      val = val * t + coef[c][k] / static_cast<double>(kCauchyPoints);
    }
    jet.value[c] = val;
    jet.deriv[c] = der / rho;
  }
  return jet;
}

}  // namespace

struct HoloCurve::Node {
  int n_components = 0;
  std::variant<RationalData, EllipticData, TransformedData, BubbledData> data;
};

const HoloCurve::Node& HoloCurve::node() const {
  if (!node_) throw PreconditionError("HoloCurve: empty curve");
  return *node_;
}

HoloCurve HoloCurve::rational(std::vector<Polynomial> components) {
  if (components.size() < 2 || components.size() > static_cast<std::size_t>(kMaxComponents)) {
    throw std::invalid_argument("HoloCurve::rational: need 2.." + std::to_string(kMaxComponents) + " components");
  }
  bool all_zero = true;
  for (const Polynomial& p : components) all_zero = all_zero && p.is_zero();
  if (all_zero) throw PreconditionError("HoloCurve::rational: all components are zero");
  if (have_common_root(components)) throw PreconditionError("HoloCurve::rational: components share a common factor");
  RationalData d;
  for (const Polynomial& p : components) d.derivs.push_back(p.derivative());
  d.comps = std::move(components);
  auto node = std::make_shared<Node>();
  node->n_components = static_cast<int>(d.comps.size());
  node->data = std::move(d);
  return HoloCurve(std::move(node));
}

HoloCurve HoloCurve::constant(const HomogVec& point) {
  std::vector<Polynomial> comps;
  for (int i = 0; i < point.size(); ++i) comps.push_back(Polynomial({point[i]}));
  return rational(std::move(comps));
}

HoloCurve HoloCurve::elliptic(const PlaneLattice& lattice, std::vector<EllipticComponent> components) {
  if (components.size() < 2 || components.size() > static_cast<std::size_t>(kMaxComponents)) {
    throw std::invalid_argument("HoloCurve::elliptic: need 2.." + std::to_string(kMaxComponents) + " components");
  }
  EllipticData d{lattice, std::move(components), 0};
  bool any = false;
  for (const EllipticComponent& c : d.comps) {
    for (int i = 0; i <= 3; ++i) {
      for (int j = 0; j <= 1; ++j) {
        if (c[i][j] == Complex(0.0, 0.0)) continue;
        any = true;
        d.max_order = std::max(d.max_order, elliptic_pole_order(i, j));
      }
    }
  }
  if (!any) throw PreconditionError("HoloCurve::elliptic: all components are zero");
  auto node = std::make_shared<Node>();
  node->n_components = static_cast<int>(d.comps.size());
  node->data = std::move(d);
  return HoloCurve(std::move(node));
}

HoloCurve HoloCurve::transformed(Complex alpha, Complex beta) const {
  if (alpha == Complex(0.0, 0.0)) throw std::invalid_argument("HoloCurve::transformed: alpha must be nonzero");
  auto node = std::make_shared<Node>();
  node->n_components = this->node().n_components;
  // Compose nested affine maps so evaluation stays one level deep.
  if (const auto* t = std::get_if<TransformedData>(&this->node().data)) {
    node->data = TransformedData{t->base, t->alpha * alpha, t->alpha * beta + t->beta};
  } else {
    node->data = TransformedData{*this, alpha, beta};
  }
  return HoloCurve(std::move(node));
}

HoloCurve HoloCurve::bubbled(Complex p, const HomogVec& q, double a) const {
  if (q.size() != this->node().n_components) throw std::invalid_argument("HoloCurve::bubbled: target dimension mismatch");
  if (!(a > 0.0)) throw std::invalid_argument("HoloCurve::bubbled: a must be positive");
  auto node = std::make_shared<Node>();
  node->n_components = this->node().n_components;
  node->data = BubbledData{*this, p, q, a, ChartReflection(q)};
  return HoloCurve(std::move(node));
}

int HoloCurve::dim() const { return node().n_components - 1; }

CurveKind HoloCurve::kind() const {
  switch (node().data.index()) {
    case 0: return CurveKind::rational;
    case 1: return CurveKind::elliptic;
    case 2: return CurveKind::transformed;
    default: return CurveKind::bubbled;
  }
}

bool HoloCurve::is_constant() const {
  const Node& n = node();
  if (const auto* r = std::get_if<RationalData>(&n.data)) {
    for (const Polynomial& p : r->comps) {
      if (p.degree() > 0) return false;
    }
    return true;
  }
  if (const auto* e = std::get_if<EllipticData>(&n.data)) return e->max_order == 0;
  if (const auto* t = std::get_if<TransformedData>(&n.data)) return t->base.is_constant();
  return false;
}

std::optional<PlaneLattice> HoloCurve::period_lattice() const {
  const Node& n = node();
  if (const auto* e = std::get_if<EllipticData>(&n.data)) return e->lattice;
  if (const auto* t = std::get_if<TransformedData>(&n.data)) {
    auto base = t->base.period_lattice();
    if (base) return base->scaled(1.0 / t->alpha);
  }
  return std::nullopt;
}

Jet HoloCurve::lift(Complex z, Complex anchor) const {
  const Node& n = node();
  switch (n.data.index()) {
    case 0: {
      const auto& d = std::get<RationalData>(n.data);
      Jet jet{HomogVec(n.n_components), HomogVec(n.n_components)};
      for (int i = 0; i < n.n_components; ++i) d.comps[i].eval(z, jet.value[i], jet.deriv[i]);
      return jet;
    }
    case 1:
      return elliptic_jet(std::get<EllipticData>(n.data), z, anchor);
    case 2: {
      const auto& d = std::get<TransformedData>(n.data);
      Jet jet = d.base.lift(d.alpha * z + d.beta, d.alpha * anchor + d.beta);
      jet.deriv *= d.alpha;
      return jet;
    }
    default: {
      const auto& d = std::get<BubbledData>(n.data);
      const Jet base = d.base.lift(z, anchor);
      const HomogVec u = d.chart.apply(base.value);
      const HomogVec du = d.chart.apply(base.deriv);
      const Complex w = z - d.p;
      const Complex w2 = w * w;
      const Complex w3 = w2 * w;
      HomogVec v(n.n_components);
      HomogVec dv(n.n_components);
      v[0] = w3 * u[0];
      dv[0] = 3.0 * w2 * u[0] + w3 * du[0];
      for (int i = 1; i < n.n_components; ++i) {
        v[i] = w3 * u[i] + d.a * u[0];
        dv[i] = 3.0 * w2 * u[i] + w3 * du[i] + d.a * du[0];
      }
      return {d.chart.apply(v), d.chart.apply(dv)};
    }
  }
}

const std::vector<Polynomial>& HoloCurve::rational_components() const {
  const auto* d = std::get_if<RationalData>(&node().data);
  if (!d) throw PreconditionError("HoloCurve: not a rational curve");
  return d->comps;
}

const PlaneLattice& HoloCurve::elliptic_lattice() const {
  const auto* d = std::get_if<EllipticData>(&node().data);
  if (!d) throw PreconditionError("HoloCurve: not an elliptic curve");
  return d->lattice;
}

const std::vector<EllipticComponent>& HoloCurve::elliptic_components() const {
  const auto* d = std::get_if<EllipticData>(&node().data);
  if (!d) throw PreconditionError("HoloCurve: not an elliptic curve");
  return d->comps;
}

const HoloCurve& HoloCurve::base() const {
  if (const auto* t = std::get_if<TransformedData>(&node().data)) return t->base;
  if (const auto* b = std::get_if<BubbledData>(&node().data)) return b->base;
  throw PreconditionError("HoloCurve: curve has no base");
}

Complex HoloCurve::alpha() const {
  const auto* d = std::get_if<TransformedData>(&node().data);
  if (!d) throw PreconditionError("HoloCurve: not a transformed curve");
  return d->alpha;
}

Complex HoloCurve::beta() const {
  const auto* d = std::get_if<TransformedData>(&node().data);
  if (!d) throw PreconditionError("HoloCurve: not a transformed curve");
  return d->beta;
}

Complex HoloCurve::bubble_center() const {
  const auto* d = std::get_if<BubbledData>(&node().data);
  if (!d) throw PreconditionError("HoloCurve: not a bubbled curve");
  return d->p;
}

const HomogVec& HoloCurve::bubble_target() const {
  const auto* d = std::get_if<BubbledData>(&node().data);
  if (!d) throw PreconditionError("HoloCurve: not a bubbled curve");
  return d->q;
}

double HoloCurve::bubble_constant() const {
  const auto* d = std::get_if<BubbledData>(&node().data);
  if (!d) throw PreconditionError("HoloCurve: not a bubbled curve");
  return d->a;
}

int HoloCurve::bubble_count() const {
  const Node& n = node();
  if (const auto* b = std::get_if<BubbledData>(&n.data)) return 1 + b->base.bubble_count();
  if (const auto* t = std::get_if<TransformedData>(&n.data)) return t->base.bubble_count();
  return 0;
}

ChartReflection::ChartReflection(const HomogVec& q) : v_(q.size()) {
  const double nq = q.norm();
  if (nq == 0.0) throw std::invalid_argument("ChartReflection: zero target");
  for (int i = 0; i < q.size(); ++i) v_[i] = q[i] / nq;
  // alpha = -e^{i arg q0} avoids cancellation in v0.
  const Complex phase = std::abs(q[0]) > 0.0 ? q[0] / std::abs(q[0]) : Complex(1.0);
  v_[0] += phase;
  vv_ = v_.norm2();
}

HomogVec ChartReflection::apply(const HomogVec& x) const {
  const Complex s = 2.0 * inner(x, v_) / vv_;
  HomogVec out = x;
  for (int i = 0; i < x.size(); ++i) out[i] -= s * v_[i];
  return out;
}

}  // namespace brodylab
