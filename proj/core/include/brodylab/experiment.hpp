#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "brodylab/config.hpp"
#include "brodylab/curve.hpp"

namespace brodylab {

/// Tool version baked in at build time.
std::string tool_version();

struct Invariant {
  std::string name;
  bool pass = false;
  std::string detail;
};

enum ExitStatus : int { kStatusOk = 0, kStatusAssertion = 1, kStatusInvalid = 2 };

struct ExperimentResult {
  int status = kStatusOk;
  /// Failing invariant (or error) on non-zero status.
  std::string message;
  std::vector<Invariant> invariants;
  /// Body of <kind>.report.json; deterministic in (config, seed).
  nlohmann::json report = nlohmann::json::object();
  /// CSV tables keyed by file name.
  std::map<std::string, std::string> tables;
  /// Small values lifted into the manifest for emit_summary.
  nlohmann::json headline = nlohmann::json::object();
};

/// Runs the kind's pipeline without touching the file system. Invariant
/// failures and pipeline errors give status 1; malformed inputs referenced by
/// the config (for example a curve file) give status 2.
ExperimentResult execute_experiment(const ExperimentConfig& config);

/// `out` from the config, or runs/<kind>-seed<seed>.
std::string output_directory(const ExperimentConfig& config);

/// execute_experiment, then writes manifest.json (config echo, version, UTC
/// start, wall time, status, invariants, headline) and the report files into
/// output_directory(config). Returns the result with its status.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// The curve-check pipeline for a curve already in memory.
ExperimentResult check_curve(const HoloCurve& f, int chern_grid = 128, double density_window = 0.0);

/// Aggregates every manifest.json under `dir`: one row per (run, invariant)
/// ordered by seed then path, the maximal rho_hat over rho-search runs with
/// its mean-dimension estimate, and the fitted blow-up constants. Throws
/// std::runtime_error when no manifest is found.
nlohmann::json emit_summary(const std::string& dir);
/// Fixed-width text rendering of emit_summary's document.
std::string summary_text(const nlohmann::json& summary);

}  // namespace brodylab
