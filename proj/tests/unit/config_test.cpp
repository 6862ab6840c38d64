#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "test_support.hpp"
#include "torusns/config.hpp"

namespace torusns {
namespace {

TEST(ParseConfig, EmptyTextGivesDefaults) {
  const RunConfig c = parse_config("");
  EXPECT_EQ(c, RunConfig{});
  EXPECT_EQ(c.params.epsilon, 0.25);
  EXPECT_EQ(c.params.beta, 3.5);
  EXPECT_EQ(c.lattice.k_max, 4);
  EXPECT_EQ(c.params.delta, 1e-3);
  EXPECT_EQ(c.params.substeps, 8);
  EXPECT_EQ(c.rng_seed, 0u);
  EXPECT_EQ(parse_config("# only a comment\n\n   \n"), RunConfig{});
}

TEST(ParseConfig, ReadsEveryKind) {
  const RunConfig c = parse_config(
      "epsilon = 0.3  # trailing comment\n"
      "k_max=3\n"
      "truncation = sup_cube\n"
      "ic = two_mode\n"
      "reality_symmetry = true\n"
      "seed = 18446744073709551615\n"
      "emit = fields, norm_series\n"
      "output_dir = out dir\n");
  EXPECT_EQ(c.params.epsilon, 0.3);
  EXPECT_EQ(c.lattice.k_max, 3);
  EXPECT_EQ(c.lattice.truncation_rule, TruncationRule::sup_cube);
  EXPECT_EQ(c.ic_kind, IcKind::two_mode);
  EXPECT_TRUE(c.reality_symmetry);
  EXPECT_EQ(c.rng_seed, std::numeric_limits<std::uint64_t>::max());
  EXPECT_EQ(c.emit, (EmitSet{true, false, true}));
  EXPECT_EQ(c.output_dir, "out dir");
}

void expect_error_mentioning(std::string_view text, std::string_view fragment) {
  try {
    parse_config(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(ParseConfig, ReportsViolatedConstraints) {
  expect_error_mentioning("epsilon = 0.4", "3*epsilon must be < 1");
  expect_error_mentioning("epsilon = 0", "epsilon");
  expect_error_mentioning("beta = 3", "beta must be > 3");
  expect_error_mentioning("delta = -1", "delta");
  expect_error_mentioning("substeps = 0", "substeps");
  expect_error_mentioning("k_max = 0", "k_max");
  expect_error_mentioning("horizon_m = 0", "horizon_m");
  expect_error_mentioning("ic = from_checkpoint", "ic_path");
}

TEST(ParseConfig, RejectsMalformedInput) {
  expect_error_mentioning("colour = blue", "unknown configuration key");
  expect_error_mentioning("delta = 1e-3\ndelta = 2e-3", "line 2");
  expect_error_mentioning("delta 1e-3", "line 1");
  expect_error_mentioning("delta = small", "delta");
  expect_error_mentioning("k_max = 2.5", "k_max");
  expect_error_mentioning("reality_symmetry = maybe", "reality_symmetry");
  expect_error_mentioning("truncation = octahedron", "octahedron");
  expect_error_mentioning("emit = plots", "emit");
  expect_error_mentioning("ic = vortex", "vortex");
}

TEST(SerializeConfig, RoundTripsRandomConfigs) {
  testing::Rng rng(60);
  for (int trial = 0; trial < 200; ++trial) {
    RunConfig c;
    c.params.epsilon = rng.uniform(1e-3, 0.33);
    c.params.beta = rng.uniform(3.0001, 6.0);
    c.params.delta = std::exp(rng.uniform(-20.0, 0.0));
    c.params.decay_c = rng.uniform(0.01, 2.0);
    c.params.fp_tol = std::exp(rng.uniform(-40.0, -5.0));
    c.params.fp_max_iter = rng.integer(1, 100);
    c.params.substeps = rng.integer(1, 64);
    c.params.threads = rng.integer(1, 8);
    c.lattice.k_max = rng.integer(1, 10);
    c.lattice.truncation_rule = rng.integer(0, 1) ? TruncationRule::sup_cube : TruncationRule::euclidean_ball;
    c.ic_kind = static_cast<IcKind>(rng.integer(0, 2));
    c.reality_symmetry = rng.integer(0, 1) == 1;
    c.rng_seed = static_cast<std::uint64_t>(rng.uniform() * 1e18);
    c.horizon_m = rng.integer(1, 50);
    c.emit = EmitSet{rng.integer(0, 1) == 1, rng.integer(0, 1) == 1, rng.integer(0, 1) == 1};
    c.oracle_horizon = rng.integer(0, 5);
    c.oracle_tol = std::exp(rng.uniform(-30.0, 0.0));
    const std::string text = serialize_config(c);
    const RunConfig back = parse_config(text);
    EXPECT_EQ(back, c) << text;
    EXPECT_EQ(serialize_config(back), text);
  }
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1e-3), "0.001");
  testing::Rng rng(61);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::ldexp(rng.uniform(-1.0, 1.0), rng.integer(-300, 300));
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}

}  // namespace
}  // namespace torusns
