#include "brodylab/curve_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace brodylab {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string cnum(Complex z) { return num(z.real()) + " " + num(z.imag()); }

void write_block(std::ostream& out, const HoloCurve& f) {
  switch (f.kind()) {
    case CurveKind::rational:
      out << "rational " << f.dim() << "\n";
      for (const Polynomial& p : f.rational_components()) {
        out << "poly " << p.degree();
        for (const Complex& c : p.coeffs()) out << ' ' << cnum(c);
        out << "\n";
      }
      break;
    case CurveKind::elliptic: {
      const PlaneLattice& L = f.elliptic_lattice();
      out << "elliptic " << f.dim() << "\n";
      out << "lattice " << cnum(L.w1()) << ' ' << cnum(L.w2()) << "\n";
      for (const EllipticComponent& c : f.elliptic_components()) {
        out << "component";
        for (int i = 0; i <= 3; ++i) {
          for (int j = 0; j <= 1; ++j) {
            if (c[i][j] != Complex(0.0, 0.0)) out << ' ' << i << ' ' << j << ' ' << cnum(c[i][j]);
          }
        }
        out << "\n";
      }
      break;
    }
    case CurveKind::transformed:
      out << "transformed " << cnum(f.alpha()) << ' ' << cnum(f.beta()) << "\n";
      write_block(out, f.base());
      break;
    case CurveKind::bubbled: {
      const HomogVec& q = f.bubble_target();
      out << "bubbled " << cnum(f.bubble_center()) << ' ' << num(f.bubble_constant()) << ' ' << q.size();
      for (int i = 0; i < q.size(); ++i) out << ' ' << cnum(q[i]);
      out << "\n";
      write_block(out, f.base());
      break;
    }
  }
  out << "end\n";
}

class Reader {
 public:
  explicit Reader(std::istream& in) {
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
      ++n;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string tok;
      std::vector<std::string> toks;
      while (ls >> tok) toks.push_back(tok);
      if (!toks.empty()) lines_.push_back({n, std::move(toks)});
    }
  }

  struct Line {
    int number;
    std::vector<std::string> toks;
  };

  bool done() const { return pos_ >= lines_.size(); }
  const Line& next() {
    if (done()) fail(last_line(), "unexpected end of input");
    return lines_[pos_++];
  }
  [[noreturn]] static void fail(int line, const std::string& msg) {
    throw std::runtime_error("curve file line " + std::to_string(line) + ": " + msg);
  }
  int last_line() const { return lines_.empty() ? 0 : lines_.back().number; }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

struct Cursor {
  const Reader::Line& line;
  std::size_t i = 1;
  double real() {
    if (i >= line.toks.size()) Reader::fail(line.number, "missing number");
    try {
      std::size_t used = 0;
      const double v = std::stod(line.toks[i], &used);
      if (used != line.toks[i].size()) throw std::invalid_argument("trailing");
      ++i;
      return v;
    } catch (const std::exception&) {
      Reader::fail(line.number, "bad number '" + line.toks[i] + "'");
    }
  }
  int integer() {
    const double v = real();
    if (v != static_cast<int>(v)) Reader::fail(line.number, "expected an integer");
    return static_cast<int>(v);
  }
  Complex complex() {
    const double re = real();
    return {re, real()};
  }
  void finish() const {
    if (i != line.toks.size()) Reader::fail(line.number, "unexpected trailing tokens");
  }
};

HoloCurve read_block(Reader& r) {
  const Reader::Line& head = r.next();
  const std::string& kind = head.toks[0];
  Cursor c{head};
  HoloCurve out;
  try {
    if (kind == "rational") {
      const int N = c.integer();
      c.finish();
      if (N < 1 || N + 1 > kMaxComponents) Reader::fail(head.number, "N out of range");
      std::vector<Polynomial> comps;
      for (int k = 0; k <= N; ++k) {
        const Reader::Line& l = r.next();
        if (l.toks[0] != "poly") Reader::fail(l.number, "expected 'poly'");
        Cursor pc{l};
        const int deg = pc.integer();
        std::vector<Complex> coeffs;
        for (int d = 0; d <= deg; ++d) coeffs.push_back(pc.complex());
        pc.finish();
        comps.emplace_back(std::move(coeffs));
      }
      out = HoloCurve::rational(std::move(comps));
    } else if (kind == "elliptic") {
      const int N = c.integer();
      c.finish();
      if (N < 1 || N + 1 > kMaxComponents) Reader::fail(head.number, "N out of range");
      const Reader::Line& ll = r.next();
      if (ll.toks[0] != "lattice") Reader::fail(ll.number, "expected 'lattice'");
      Cursor lc{ll};
      const Complex w1 = lc.complex();
      const Complex w2 = lc.complex();
      lc.finish();
      std::vector<EllipticComponent> comps;
      for (int k = 0; k <= N; ++k) {
        const Reader::Line& l = r.next();
        if (l.toks[0] != "component") Reader::fail(l.number, "expected 'component'");
        Cursor cc{l};
        EllipticComponent comp{};
        while (cc.i < l.toks.size()) {
          const int i = cc.integer();
          const int j = cc.integer();
          if (i < 0 || i > 3 || j < 0 || j > 1) Reader::fail(l.number, "monomial exponent out of range");
          comp[i][j] = cc.complex();
        }
        comps.push_back(comp);
      }
      out = HoloCurve::elliptic(PlaneLattice(w1, w2), std::move(comps));
    } else if (kind == "transformed") {
      const Complex alpha = c.complex();
      const Complex beta = c.complex();
      c.finish();
      out = read_block(r).transformed(alpha, beta);
    } else if (kind == "bubbled") {
      const Complex p = c.complex();
      const double a = c.real();
      const int n = c.integer();
      if (n < 2 || n > kMaxComponents) Reader::fail(head.number, "bad target size");
      HomogVec q(n);
      for (int i = 0; i < n; ++i) q[i] = c.complex();
      c.finish();
      out = read_block(r).bubbled(p, q, a);
    } else {
      Reader::fail(head.number, "unknown curve kind '" + kind + "'");
    }
  } catch (const std::runtime_error& e) {
    if (std::string(e.what()).rfind("curve file line", 0) == 0) throw;
    Reader::fail(head.number, e.what());
  } catch (const std::invalid_argument& e) {
    Reader::fail(head.number, e.what());
  }
  const Reader::Line& end = r.next();
  if (end.toks.size() != 1 || end.toks[0] != "end") Reader::fail(end.number, "expected 'end'");
  return out;
}

}  // namespace

void write_curve(std::ostream& out, const HoloCurve& f) {
  out << "brodylab-curve 1\n";
  write_block(out, f);
}

std::string curve_to_string(const HoloCurve& f) {
  std::ostringstream out;
  write_curve(out, f);
  return out.str();
}

HoloCurve read_curve(std::istream& in) {
  Reader r(in);
  const Reader::Line& head = r.next();
  if (head.toks.size() != 2 || head.toks[0] != "brodylab-curve" || head.toks[1] != "1") {
    Reader::fail(head.number, "expected header 'brodylab-curve 1'");
  }
  HoloCurve f = read_block(r);
  if (!r.done()) Reader::fail(r.next().number, "trailing content after curve");
  return f;
}

HoloCurve curve_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_curve(in);
}

HoloCurve load_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open curve file " + path);
  return read_curve(in);
}

void save_curve(const std::string& path, const HoloCurve& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write curve file " + path);
  write_curve(out, f);
}

}  // namespace brodylab
