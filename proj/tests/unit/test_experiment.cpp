#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "brodylab/curve_io.hpp"
#include "brodylab/experiment.hpp"

using namespace brodylab;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("brodylab_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_pde(std::uint64_t seed, const fs::path& out) {
  auto c = parse_config("kind = pde-selftest\n[pde-selftest]\nsamples = 3\ngrid = 32\nmax_freq = 4\n");
  c.seed = seed;
  c.out_dir = out.string();
  return c;
}

}  // namespace

TEST(Experiment, ConstantCurveFailsNormalization) {
  const auto r = check_curve(HoloCurve::constant(HomogVec{1.0, 2.0}));
  EXPECT_EQ(r.status, kStatusAssertion);
  EXPECT_NE(r.message.find("no normalization"), std::string::npos) << r.message;
}

TEST(Experiment, EllipticCurveCheckPasses) {
  EllipticComponent one{}, p{};
  one[0][0] = 1.0;
  p[1][0] = 1.0;
  const auto r = check_curve(HoloCurve::elliptic(PlaneLattice::square(1.0), {one, p}), 64);
  EXPECT_EQ(r.status, kStatusOk) << r.message;
  bool chern = false;
  for (const auto& inv : r.invariants) chern = chern || inv.name == "chern_integral_integer";
  EXPECT_TRUE(chern);
}

TEST(Experiment, MissingCurveFileIsInvalidInput) {
  const auto dir = scratch_dir("badcurve");
  std::ofstream(dir / "broken.curve") << "brodylab-curve 1\nrational 1\npoly zero\n";
  auto c = parse_config("kind = curve-check\n[curve-check]\ncurve = broken.curve\n");
  c.base_dir = dir.string();
  EXPECT_EQ(execute_experiment(c).status, kStatusInvalid);
  c = parse_config("kind = curve-check\n[curve-check]\ncurve = absent.curve\n");
  c.base_dir = dir.string();
  EXPECT_EQ(execute_experiment(c).status, kStatusInvalid);
}

TEST(Experiment, PdeRunIsDeterministic) {
  const auto root = scratch_dir("pde");
  const auto a = run_experiment(small_pde(4, root / "a"));
  const auto b = run_experiment(small_pde(4, root / "b"));
  EXPECT_EQ(a.status, kStatusOk) << a.message;
  EXPECT_EQ(read_file(root / "a" / "pde-selftest.report.json"), read_file(root / "b" / "pde-selftest.report.json"));
  EXPECT_TRUE(fs::exists(root / "a" / "manifest.json"));
  EXPECT_EQ(output_directory(parse_config("kind = pde-selftest\nseed = 12\n")), "runs/pde-selftest-seed12");
}

TEST(Experiment, SummaryOrdersBySeed) {
  const auto root = scratch_dir("summary");
  run_experiment(small_pde(7, root / "z"));
  run_experiment(small_pde(2, root / "y"));
  const auto s = emit_summary(root.string());
  const auto& rows = s["rows"];
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows.front()["seed"], 2);
  EXPECT_EQ(rows.back()["seed"], 7);
  EXPECT_NE(summary_text(s).find("all invariants passed"), std::string::npos);
  EXPECT_THROW(emit_summary(scratch_dir("empty").string()), std::runtime_error);
}
