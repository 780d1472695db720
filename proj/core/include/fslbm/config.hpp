#pragma once

#include "fslbm/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace fslbm {

/// Output options that may come from the scenario file or the command line.
struct RunConfig {
  std::filesystem::path scenario_path;
  std::filesystem::path output_dir = "out";
  std::optional<SurfaceRule> rule_override;
  /// Snapshot cadence in steps; 0 disables snapshots.
  std::uint64_t snapshots_every = 0;
  /// Profile axis (0 = x, 1 = y, 2 = z).
  int profile_axis = 2;
  /// Reserved; the physics is deterministic.
  std::uint64_t seed = 0;
  bool quiet = false;
};

struct ParsedConfig {
  Scenario scenario;
  RunConfig run;
};

/**
 * Reads a YAML scenario file. Reals accept plain numbers or exact fractions
 * ("3/16"). Unknown keys, wrong types and out-of-range values raise
 * ConfigError carrying the line and column of the offending node.
 */
ParsedConfig parse_config(const std::filesystem::path& path);
ParsedConfig parse_config_string(const std::string& text);

}  // namespace fslbm
