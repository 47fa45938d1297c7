#include <gtest/gtest.h>

#include "brodylab/config.hpp"

using namespace brodylab;

namespace {

int error_line(const std::string& text) {
  try {
    parse_config(text, "t.ini");
  } catch (const ConfigError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("t.ini:", 0), 0u) << e.what();
    return e.line();
  }
  ADD_FAILURE() << "expected ConfigError for:\n" << text;
  return -1;
}

}  // namespace

TEST(Config, KindNamesRoundTrip) {
  for (auto k : {ExperimentKind::pde_selftest, ExperimentKind::blowup_verify, ExperimentKind::entropy_scan,
                 ExperimentKind::rho_search, ExperimentKind::curve_check}) {
    EXPECT_EQ(parse_kind(kind_name(k)), k);
  }
  EXPECT_THROW(parse_kind("pde"), std::invalid_argument);
}

TEST(Config, DefaultsFillMissingKeys) {
  const auto c = parse_config("kind = rho-search\nseed = 9\n");
  EXPECT_EQ(c.kind, ExperimentKind::rho_search);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.get_int("budget"), 60);
  EXPECT_EQ(c.get_text("family"), "elliptic-n1");
  EXPECT_TRUE(c.get_bool("warm_start"));
  EXPECT_TRUE(c.get_list("l_sweep").empty());
}

TEST(Config, SectionValuesAndComments) {
  const auto c = parse_config(
      "# experiment\n"
      "kind = entropy-scan\n"
      "out = runs/x\n"
      "\n"
      "[entropy-scan]\n"
      "; scales\n"
      "eps = 0.5, 0.25 # trailing\n"
      "growth_check = true\n");
  EXPECT_EQ(c.out_dir, "runs/x");
  EXPECT_EQ(c.get_list("eps"), (std::vector<double>{0.5, 0.25}));
  EXPECT_TRUE(c.get_bool("growth_check"));
  EXPECT_EQ(c.echo()["params"]["eps"], nlohmann::json::array({0.5, 0.25}));
}

TEST(Config, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("kind = pde-selftest\n[pde-selftest]\nbogus = 1\n"), 3);
  EXPECT_EQ(error_line("kind = pde-selftest\n[pde-selftest]\ngrid = 64\ngrid = 32\n"), 4);
  EXPECT_EQ(error_line("kind = pde-selftest\n[rho-search]\n"), 2);
  EXPECT_EQ(error_line("kind = pde-selftest\n[pde-selftest]\nsamples = many\n"), 3);
  EXPECT_EQ(error_line("kind = pde-selftest\n[pde-selftest]\nsamples = 1.5\n"), 3);
  EXPECT_EQ(error_line("kind = blowup-verify\n[blowup-verify]\nN = 4\n"), 3);
  EXPECT_EQ(error_line("kind = rho-search\n[rho-search]\nfamily = elliptic-n3\n"), 3);
  EXPECT_EQ(error_line("kind = nope\n"), 1);
  EXPECT_EQ(error_line("seed = -1\nkind = pde-selftest\n"), 1);
  EXPECT_EQ(error_line("kind pde-selftest\n"), 1);
}

TEST(Config, MissingKindAndRequiredKeys) {
  EXPECT_THROW(parse_config("seed = 3\n"), ConfigError);
  EXPECT_THROW(parse_config("kind = curve-check\n"), ConfigError);
  EXPECT_NO_THROW(parse_config("kind = curve-check\n[curve-check]\ncurve = a.curve\n"));
  EXPECT_THROW(load_config("/nonexistent/x.ini"), ConfigError);
}

TEST(Config, SchemaIsClosed) {
  const auto& s = param_schema(ExperimentKind::entropy_scan);
  bool found = false;
  for (const auto& p : s) found = found || p.key == "sample_size";
  EXPECT_TRUE(found);
  EXPECT_EQ(error_line("kind = entropy-scan\n[entropy-scan]\nsample_size = 50\n"), 3);
}
