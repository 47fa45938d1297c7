#include "brodylab/config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace brodylab {

namespace {

using P = ParamType;

const std::vector<ParamSpec> kPde = {
    {"samples", P::integer, "100", 1, 100000, {}, "random psi per invariant"},
    {"grid", P::integer, "64", 8, 1024, {}, "torus samples per axis"},
    {"max_freq", P::integer, "8", 1, 256, {}, "largest frequency of random psi"},
    {"torus_side", P::real, "16", 1e-3, 1e6, {}, "side of the square torus"},
    {"residual_tol", P::real, "1e-10", 0, 1, {}, "relative spectral residual bound"},
    {"bound_constant", P::real, "4", 0, 1e6, {}, "C in sup|phi| <= C sup|psi|"},
    {"kappa_budget", P::integer, "0", 0, 100000, {}, "admissible samples for kappa (0 skips)"},
    {"kappa_K", P::real, "10", 1e-6, 1e6, {}, "C1 bound K"},
    {"kappa_R", P::real, "4", 1e-3, 1e6, {}, "nondegeneracy radius"},
};

const std::vector<ParamSpec> kBlowup = {
    {"N", P::integer, "1", 1, 3, {}, "target dimension"},
    {"samples", P::integer, "400", 8, 1000000, {}, "samples per fit (doubled for stability)"},
    {"delta3", P::real, "0.05", 1e-6, 0.999, {}, "chart radius"},
    {"lambda", P::real, "1.5", 1.000001, 1.999999, {}, "Lipschitz bound of the output"},
    {"R2", P::real, "20", 1e-3, 1e7, {}, "lower bound for R"},
    {"instances", P::integer, "20", 0, 100000, {}, "random bubble-window instances"},
    {"synthetic", P::integer, "2", 0, 1000, {}, "synthetic degenerate curves to resolve"},
    {"lipschitz_resolution", P::real, "4", 1e-3, 1e6, {}, "grid spacing for the output Lipschitz sup"},
};

const std::vector<ParamSpec> kEntropy = {
    {"family", P::choice, "translated-lattice", 0, 0, {"translated-lattice"}, "curve family"},
    {"period", P::real, "1", 1e-3, 1e3, {}, "lattice side"},
    {"eps", P::real_list, "0.4,0.2,0.1", 1e-9, 1, {}, "scales"},
    {"sides", P::real_list, "1,2", 1e-6, 1e4, {}, "window side lengths"},
    {"sample_size", P::integer, "100", 100, 100000, {}, "parameter samples per window"},
    {"resolution", P::real, "0.25", 1e-4, 1e3, {}, "grid spacing of d_Omega"},
    {"growth_check", P::boolean, "false", 0, 0, {}, "run the separated-count growth check"},
    {"growth_R", P::real, "5", 1e-3, 1e6, {}, "nondegeneracy radius"},
    {"growth_eps", P::real, "0.05", 1e-9, 1, {}, "separation scale"},
    {"growth_delta2", P::real, "0.1", 1e-9, 1, {}, "perturbation radius"},
    {"growth_samples", P::integer, "30", 2, 100000, {}, "perturbations per window"},
    {"growth_resolution", P::real, "0.25", 1e-4, 1e3, {}, "grid spacing of d_Lambda"},
};

const std::vector<ParamSpec> kRho = {
    {"family", P::choice, "elliptic-n1", 0, 0, {"elliptic-n1", "elliptic-n2"}, "search family"},
    {"budget", P::integer, "60", 1, 1000000, {}, "evaluations per restart"},
    {"restarts", P::integer, "2", 1, 10000, {}, "restarts"},
    {"quadrature_grid", P::integer, "64", 8, 4096, {}, "energy quadrature points per cell axis"},
    {"sup_grid", P::integer, "64", 8, 4096, {}, "sup grid points across the cell"},
    {"refine_passes", P::integer, "2", 0, 8, {}, "sup refinement passes"},
    {"max_delta", P::real, "0.01", 0, 1, {}, "accepted relative re-evaluation change"},
    {"warm_start", P::boolean, "true", 0, 0, {}, "elliptic-n2 starts from the elliptic-n1 optimum"},
    {"l_sweep", P::real_list, "", 1e-6, 1e4, {}, "window sides (in periods) for the L-sweep"},
    {"translate_grid", P::integer, "4", 1, 64, {}, "shifts per axis in the L-sweep"},
};

const std::vector<ParamSpec> kCurve = {
    {"curve", P::text, "", 0, 0, {}, "curve file (relative to the config)", true},
    {"chern_grid", P::integer, "128", 16, 4096, {}, "base grid for the Chern integral"},
    {"density_window", P::real, "0", 0, 1e6, {}, "window for the density estimate of non-periodic curves (0 skips)"},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_long(const std::string& s, long& out) {
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && p == end;
}

bool parse_double(const std::string& s, double& out) {
  const char* b = s.data();
  if (!s.empty() && s[0] == '+') ++b;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(b, end, out);
  return ec == std::errc() && p == end && std::isfinite(out);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

// Returns an error message, empty when the value is acceptable.
std::string check_value(const ParamSpec& spec, const std::string& v) {
  auto range = [&](double x) -> std::string {
    if (x < spec.min || x > spec.max) {
      std::ostringstream m;
      m << "value " << v << " for '" << spec.key << "' outside [" << spec.min << ", " << spec.max << "]";
      return m.str();
    }
    return "";
  };
  switch (spec.type) {
    case ParamType::integer: {
      long x = 0;
      if (!parse_long(v, x)) return "'" + spec.key + "' expects an integer, got '" + v + "'";
      return range(static_cast<double>(x));
    }
    case ParamType::real: {
      double x = 0.0;
      if (!parse_double(v, x)) return "'" + spec.key + "' expects a number, got '" + v + "'";
      return range(x);
    }
    case ParamType::boolean:
      if (v != "true" && v != "false") return "'" + spec.key + "' expects true or false, got '" + v + "'";
      return "";
    case ParamType::text:
      if (spec.required && v.empty()) return "'" + spec.key + "' must not be empty";
      return "";
    case ParamType::real_list:
      for (const std::string& item : split_list(v)) {
        double x = 0.0;
        if (!parse_double(item, x)) return "'" + spec.key + "' expects comma-separated numbers, got '" + item + "'";
        if (auto e = range(x); !e.empty()) return e;
      }
      return "";
    case ParamType::choice:
      for (const std::string& c : spec.choices) {
        if (c == v) return "";
      }
      {
        std::string all;
        for (const std::string& c : spec.choices) all += (all.empty() ? "" : ", ") + c;
        return "'" + spec.key + "' must be one of " + all + ", got '" + v + "'";
      }
  }
  return "";
}

const ParamSpec* find_spec(ExperimentKind kind, const std::string& key) {
  for (const ParamSpec& s : param_schema(kind)) {
    if (s.key == key) return &s;
  }
  return nullptr;
}

const ParamSpec& spec_or_throw(ExperimentKind kind, const std::string& key) {
  const ParamSpec* s = find_spec(kind, key);
  if (!s) throw std::invalid_argument("no parameter '" + key + "' for kind " + kind_name(kind));
  return *s;
}

}  // namespace

std::string kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::pde_selftest: return "pde-selftest";
    case ExperimentKind::blowup_verify: return "blowup-verify";
    case ExperimentKind::entropy_scan: return "entropy-scan";
    case ExperimentKind::rho_search: return "rho-search";
    case ExperimentKind::curve_check: return "curve-check";
  }
  return "unknown";
}

ExperimentKind parse_kind(const std::string& name) {
  for (ExperimentKind k : {ExperimentKind::pde_selftest, ExperimentKind::blowup_verify, ExperimentKind::entropy_scan,
                           ExperimentKind::rho_search, ExperimentKind::curve_check}) {
    if (kind_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown experiment kind '" + name +
                              "' (expected pde-selftest, blowup-verify, entropy-scan, rho-search or curve-check)");
}

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : "") + ": " + message), line_(line) {}

const std::vector<ParamSpec>& param_schema(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::pde_selftest: return kPde;
    case ExperimentKind::blowup_verify: return kBlowup;
    case ExperimentKind::entropy_scan: return kEntropy;
    case ExperimentKind::rho_search: return kRho;
    case ExperimentKind::curve_check: return kCurve;
  }
  throw std::invalid_argument("param_schema: bad kind");
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  struct Entry {
    std::string value;
    int line;
  };
  std::map<std::string, Entry> top;
  std::map<std::string, Entry> body;
  std::string section;
  int section_line = 0;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty() || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(source, lineno, "malformed section header '" + line + "'");
      if (!section.empty()) throw ConfigError(source, lineno, "only one section is allowed");
      section = trim(line.substr(1, line.size() - 2));
      section_line = lineno;
      if (section.empty()) throw ConfigError(source, lineno, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(source, lineno, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(source, lineno, "empty key");
    auto& target = section.empty() ? top : body;
    if (auto it = target.find(key); it != target.end()) {
      throw ConfigError(source, lineno, "duplicate key '" + key + "' (first on line " + std::to_string(it->second.line) +
                                            ")");
    }
    target[key] = {value, lineno};
  }

  ExperimentConfig cfg;
  cfg.source = source;
  for (const auto& [key, e] : top) {
    if (key != "kind" && key != "seed" && key != "out") {
      throw ConfigError(source, e.line, "unknown top-level key '" + key + "' (expected kind, seed or out)");
    }
  }
  const auto kind_it = top.find("kind");
  if (kind_it == top.end()) throw ConfigError(source, 1, "missing required key 'kind'");
  try {
    cfg.kind = parse_kind(kind_it->second.value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source, kind_it->second.line, e.what());
  }
  if (auto it = top.find("seed"); it != top.end()) {
    long s = 0;
    if (!parse_long(it->second.value, s) || s < 0) {
      throw ConfigError(source, it->second.line, "'seed' expects a non-negative integer, got '" + it->second.value + "'");
    }
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (auto it = top.find("out"); it != top.end()) cfg.out_dir = it->second.value;

  if (!section.empty() && section != kind_name(cfg.kind)) {
    throw ConfigError(source, section_line,
                      "section [" + section + "] does not match kind '" + kind_name(cfg.kind) + "'");
  }
  for (const auto& [key, e] : body) {
    const ParamSpec* spec = find_spec(cfg.kind, key);
    if (!spec) throw ConfigError(source, e.line, "unknown key '" + key + "' in section [" + section + "]");
    if (const std::string err = check_value(*spec, e.value); !err.empty()) throw ConfigError(source, e.line, err);
    cfg.params[key] = e.value;
  }
  for (const ParamSpec& spec : param_schema(cfg.kind)) {
    if (cfg.params.count(spec.key)) continue;
    if (spec.required) {
      throw ConfigError(source, section_line > 0 ? section_line : lineno,
                        "missing required key '" + spec.key + "' for kind " + kind_name(cfg.kind));
    }
    cfg.params[spec.key] = spec.default_value;
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  ExperimentConfig cfg = parse_config(text.str(), path);
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  cfg.base_dir = parent.empty() ? "." : parent.string();
  return cfg;
}

long ExperimentConfig::get_int(const std::string& key) const {
  const ParamSpec& s = spec_or_throw(kind, key);
  if (s.type != ParamType::integer) throw std::invalid_argument("'" + key + "' is not an integer parameter");
  long x = 0;
  parse_long(params.at(key), x);
  return x;
}

double ExperimentConfig::get_real(const std::string& key) const {
  const ParamSpec& s = spec_or_throw(kind, key);
  if (s.type != ParamType::real) throw std::invalid_argument("'" + key + "' is not a real parameter");
  double x = 0.0;
  parse_double(params.at(key), x);
  return x;
}

bool ExperimentConfig::get_bool(const std::string& key) const {
  const ParamSpec& s = spec_or_throw(kind, key);
  if (s.type != ParamType::boolean) throw std::invalid_argument("'" + key + "' is not a boolean parameter");
  return params.at(key) == "true";
}

std::string ExperimentConfig::get_text(const std::string& key) const {
  const ParamSpec& s = spec_or_throw(kind, key);
  if (s.type != ParamType::text && s.type != ParamType::choice) {
    throw std::invalid_argument("'" + key + "' is not a text parameter");
  }
  return params.at(key);
}

std::vector<double> ExperimentConfig::get_list(const std::string& key) const {
  const ParamSpec& s = spec_or_throw(kind, key);
  if (s.type != ParamType::real_list) throw std::invalid_argument("'" + key + "' is not a list parameter");
  std::vector<double> out;
  for (const std::string& item : split_list(params.at(key))) {
    double x = 0.0;
    parse_double(item, x);
    out.push_back(x);
  }
  return out;
}

nlohmann::json ExperimentConfig::echo() const {
  nlohmann::json p = nlohmann::json::object();
  for (const ParamSpec& s : param_schema(kind)) {
    switch (s.type) {
      case ParamType::integer: p[s.key] = get_int(s.key); break;
      case ParamType::real: p[s.key] = get_real(s.key); break;
      case ParamType::boolean: p[s.key] = get_bool(s.key); break;
      case ParamType::real_list: p[s.key] = get_list(s.key); break;
      case ParamType::text:
      case ParamType::choice: p[s.key] = get_text(s.key); break;
    }
  }
  return {{"kind", kind_name(kind)}, {"seed", seed}, {"out", out_dir}, {"params", p}};
}

}  // namespace brodylab
