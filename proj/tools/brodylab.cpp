#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "brodylab/config.hpp"
#include "brodylab/curve_io.hpp"
#include "brodylab/experiment.hpp"

using namespace brodylab;

namespace {

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed, std::optional<std::string> out) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(path);
  } catch (const ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return kStatusInvalid;
  }
  if (seed) cfg.seed = *seed;
  if (out) cfg.out_dir = *out;
  const ExperimentResult r = run_experiment(cfg);
  const std::string dir = output_directory(cfg);
  for (const Invariant& i : r.invariants) {
    std::cout << (i.pass ? "pass " : "FAIL ") << i.name << ": " << i.detail << '\n';
  }
  if (r.status == kStatusInvalid) {
    std::cerr << "invalid input: " << r.message << '\n';
  } else if (r.status != kStatusOk) {
    std::cerr << "assertion failure: " << r.message << '\n';
  }
  std::cout << "reports in " << dir << '\n';
  return r.status;
}

int cmd_summarize(const std::string& dir) {
  nlohmann::json s;
  try {
    s = emit_summary(dir);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kStatusAssertion;
  }
  std::ofstream(dir + "/summary.json") << s.dump(2) << '\n';
  std::cout << summary_text(s);
  return kStatusOk;
}

int cmd_check_curve(const std::string& file) {
  HoloCurve f;
  try {
    f = load_curve(file);
  } catch (const std::exception& e) {
    std::cerr << "invalid curve: " << e.what() << '\n';
    return kStatusInvalid;
  }
  const ExperimentResult r = check_curve(f);
  std::cout << r.report.dump(2) << '\n';
  for (const Invariant& i : r.invariants) {
    std::cout << (i.pass ? "pass " : "FAIL ") << i.name << ": " << i.detail << '\n';
  }
  if (r.status != kStatusOk) std::cerr << "error: " << r.message << '\n';
  return r.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"brodylab: numerical experiments on Brody curves and mean dimension"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", config_path, "experiment config")->required();
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--out", out, "override the output directory");

  std::string dir;
  auto* summarize = app.add_subcommand("summarize", "aggregate manifests under a directory");
  summarize->add_option("dir", dir, "report directory")->required();

  std::string curve_file;
  auto* check = app.add_subcommand("check-curve", "normalize and check a curve file");
  check->add_option("file", curve_file, "curve file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kStatusInvalid;
  }
  try {
    if (*run) return cmd_run(config_path, seed, out);
    if (*summarize) return cmd_summarize(dir);
    if (*check) return cmd_check_curve(curve_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kStatusAssertion;
  }
  return kStatusInvalid;
}
