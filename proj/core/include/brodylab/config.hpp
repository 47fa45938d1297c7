#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace brodylab {

enum class ExperimentKind { pde_selftest, blowup_verify, entropy_scan, rho_search, curve_check };

std::string kind_name(ExperimentKind kind);
/// Throws std::invalid_argument for unknown names.
ExperimentKind parse_kind(const std::string& name);

/// Invalid configuration; `line` is 1-based (0 when no line applies).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

enum class ParamType { integer, real, boolean, text, real_list, choice };

struct ParamSpec {
  std::string key;
  ParamType type;
  std::string default_value;
  double min = -1e300;
  double max = 1e300;
  std::vector<std::string> choices;  ///< for ParamType::choice
  std::string help;
  bool required = false;
};

/// Closed key schema of the kind's section.
const std::vector<ParamSpec>& param_schema(ExperimentKind kind);

/// Parsed experiment file:
///
///   kind = rho-search
///   seed = 7
///   out = runs/rho
///
///   [rho-search]
///   budget = 60
///
/// Top-level keys are kind, seed and out; the only section allowed is the one
/// named after the kind. Unknown keys, duplicates and out-of-range values are
/// rejected with the offending line. Missing keys take the schema default.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::pde_selftest;
  std::uint64_t seed = 1;
  std::string out_dir;
  /// Directory of the config file; relative paths in values resolve against it.
  std::string base_dir = ".";
  std::string source = "<config>";
  /// Every schema key with its (validated) value text.
  std::map<std::string, std::string> params;

  long get_int(const std::string& key) const;
  double get_real(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::string get_text(const std::string& key) const;
  std::vector<double> get_list(const std::string& key) const;

  /// Canonical echo (kind, seed, out, typed params) for the manifest.
  nlohmann::json echo() const;
};

ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
/// Reads the file; I/O failures become ConfigError at line 0.
ExperimentConfig load_config(const std::string& path);

}  // namespace brodylab
