#include "fslbm/config.hpp"

#include <gtest/gtest.h>

#include <filesystem>

namespace fslbm {
namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config_string(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(Config, MinimalFileUsesDefaults) {
  const ParsedConfig cfg = parse_config_string("scenario: film\n");
  const Scenario def;
  EXPECT_EQ(cfg.scenario.kind, ScenarioKind::Film);
  EXPECT_EQ(cfg.scenario.rule, def.rule);
  EXPECT_EQ(cfg.scenario.height, def.height);
  EXPECT_EQ(cfg.scenario.lambda_plus, def.lambda_plus);
  EXPECT_EQ(cfg.scenario.resolutions, def.resolutions);
  EXPECT_EQ(cfg.run.output_dir, std::filesystem::path("out"));
  EXPECT_EQ(cfg.run.snapshots_every, 0u);
  EXPECT_EQ(cfg.run.profile_axis, 2);
}

TEST(Config, FractionsAndRates) {
  const ParsedConfig cfg = parse_config_string(
      "scenario: film\n"
      "geometry: {height: 25/3, slope: 1/7}\n"
      "collision: {tau: 2, magic: 3/16, equilibrium: compressible, nonlinear: false}\n"
      "forcing: {gravity: 1e-4}\n"
      "resolutions: [1, 2, 4]\n"
      "steady: {tolerance: 1e-10, interval: 50, init: analytic}\n");
  const Scenario& s = cfg.scenario;
  EXPECT_DOUBLE_EQ(s.height, 25.0 / 3.0);
  EXPECT_EQ(s.slope.rise, 1);
  EXPECT_EQ(s.slope.run, 7);
  EXPECT_DOUBLE_EQ(s.lambda_plus, -0.5);
  EXPECT_DOUBLE_EQ(s.magic, 3.0 / 16.0);
  EXPECT_EQ(s.form, EquilibriumForm::Compressible);
  EXPECT_FALSE(s.nonlinear);
  EXPECT_EQ(s.resolutions, (std::vector<double>{1, 2, 4}));
  EXPECT_EQ(s.steady.interval, 50);
  EXPECT_TRUE(s.analytic_init);
}

TEST(Config, ViscosityMapsToRelaxationRate) {
  const ParsedConfig cfg = parse_config_string("scenario: couette\ncollision: {viscosity: 1/6}\n");
  EXPECT_NEAR(cfg.scenario.lambda_plus, -1.0, 1e-15);
}

TEST(Config, RejectsUnstableRelaxationRate) {
  const std::string msg = error_of("scenario: film\ncollision:\n  lambda_plus: -2.5\n");
  EXPECT_NE(msg.find("lambda_plus out of (-2,0)"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(Config, UnknownKeysCarryTheirPosition) {
  try {
    parse_config_string("scenario: film\nheigth: 8\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 1);
    EXPECT_NE(std::string(e.what()).find("heigth"), std::string::npos);
  }
  EXPECT_NE(error_of("scenario: film\ngeometry: {height: 8, width: 3}\n").find("width"), std::string::npos);
}

TEST(Config, TypeAndValueErrors) {
  EXPECT_FALSE(error_of("name: x\n").empty());  // scenario is required
  EXPECT_FALSE(error_of("scenario: vortex\n").empty());
  EXPECT_FALSE(error_of("scenario: film\ngeometry: {height: tall}\n").empty());
  EXPECT_FALSE(error_of("scenario: film\ngeometry: {slope: 1/0}\n").empty());
  EXPECT_FALSE(error_of("scenario: film\nresolutions: [2, 1]\n").empty());
  EXPECT_FALSE(error_of("scenario: film\noutput: {profile_axis: w}\n").empty());
  EXPECT_FALSE(error_of("scenario: film\ndam_break: {column: [8, 4]}\n").empty());
  EXPECT_FALSE(error_of("scenario: plate_transient\ntimes: [0.1]\ngeometry: {slope: 1/4}\n").empty());
  EXPECT_FALSE(error_of("scenario: [film\n").empty());
}

TEST(Config, DamBreakSection) {
  const ParsedConfig cfg = parse_config_string(
      "scenario: dam_break\nrule: fsl\n"
      "dam_break: {column: [80, 40], domain: [320, 80], viscosity: 1/3, gravity: 3.125e-5, samples: [10, 20]}\n"
      "output: {snapshots_every: 5}\n");
  const DamBreakSetup& d = cfg.scenario.dam_break;
  EXPECT_EQ(d.column_width, 80);
  EXPECT_EQ(d.column_height, 40);
  EXPECT_EQ(d.domain_width, 320);
  EXPECT_EQ(d.domain_height, 80);
  EXPECT_DOUBLE_EQ(d.viscosity, 1.0 / 3.0);
  EXPECT_EQ(d.rule, SurfaceRule::Fsl);
  EXPECT_EQ(d.samples, (std::vector<std::uint64_t>{10, 20}));
  EXPECT_EQ(cfg.run.snapshots_every, 5u);
}

TEST(Config, ShippedScenarioFilesParse) {
  const std::filesystem::path dir = FSLBM_CONFIG_DIR;
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".yaml") continue;
    EXPECT_NO_THROW(parse_config(entry.path())) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 10);
  EXPECT_THROW(parse_config(dir / "missing.yaml"), IoError);
}

}  // namespace
}  // namespace fslbm
