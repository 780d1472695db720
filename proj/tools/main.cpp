#include "fslbm/config.hpp"
#include "fslbm/dam_break.hpp"
#include "fslbm/scenario.hpp"
#include "fslbm/snapshot.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace fslbm;

namespace {

enum ExitCode : int { kOk = 0, kOther = 1, kConfig = 2, kDivergence = 3, kIo = 4 };

struct Options {
  std::string config;
  std::string rule;
  std::string out;
  long long snapshots_every = -1;
  bool quiet = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("config", o.config, "Scenario file (YAML)")->required();
  cmd->add_option("--rule", o.rule, "Override the free-surface rule")
      ->check(CLI::IsMember({"fsk", "fsk-simplified", "fsl", "fsl-simplified"}));
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--snapshots-every", o.snapshots_every, "Snapshot cadence in steps (0 disables)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--quiet", o.quiet, "Suppress progress output");
}

ParsedConfig load(const Options& o) {
  ParsedConfig cfg = parse_config(o.config);
  if (!o.rule.empty()) {
    cfg.run.rule_override = parse_surface_rule(o.rule);
    cfg.scenario.rule = *cfg.run.rule_override;
    cfg.scenario.dam_break.rule = *cfg.run.rule_override;
  }
  if (!o.out.empty()) cfg.run.output_dir = o.out;
  if (o.snapshots_every >= 0) cfg.run.snapshots_every = static_cast<std::uint64_t>(o.snapshots_every);
  if (o.quiet) cfg.run.quiet = true;
  return cfg;
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::string scale_tag(double scale) {
  std::ostringstream os;
  os << scale;
  return "res_" + os.str();
}

void write_errors(const fs::path& dir, const std::vector<ErrorReport>& reports) {
  const fs::path path = dir / "errors.csv";
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_errors_csv(os, reports);
  if (!os) throw IoError("failed writing " + path.string());
}

void print_summary(const std::vector<ErrorReport>& reports) {
  for (const auto& r : reports) {
    std::cout << r.scenario << " [" << r.rule << ", " << r.series << "] h=" << r.h << " L2=" << r.l2
              << " Linf=" << r.linf << " steps=" << r.steps;
    if (r.exact) {
      std::cout << " order=exact";
    } else if (r.observed_order) {
      std::cout << " order=" << *r.observed_order;
    }
    std::cout << '\n';
  }
}

// Runs every resolution of the scenario and writes errors, profiles and snapshots.
int run_study(const Options& o, bool first_only) {
  ParsedConfig cfg = load(o);
  if (cfg.scenario.kind == ScenarioKind::DamBreak) {
    throw ConfigError("dam_break scenarios are run with the dam-break subcommand");
  }
  if (first_only) cfg.scenario.resolutions.resize(1);
  const RunConfig& run = cfg.run;
  const fs::path out = run.output_dir;
  make_dir(out);
  const bool nested = cfg.scenario.resolutions.size() > 1;

  RunHooks hooks;
  if (run.snapshots_every > 0) {
    hooks.on_step = [&](double scale, const Simulation& sim) {
      if (sim.time() % run.snapshots_every != 0) return;
      const fs::path dir = nested ? out / scale_tag(scale) : out;
      make_dir(dir);
      write_vtk(dir / ("snap_" + std::to_string(sim.time()) + ".vtk"), capture(sim));
    };
  }
  hooks.on_finish = [&](const ResolutionResult& r) {
    const fs::path dir = nested ? out / scale_tag(r.scale) : out;
    make_dir(dir);
    write_profile_csv(dir / "profile.csv", r.sim, run.profile_axis);
    if (!run.quiet) std::cerr << "finished resolution " << r.scale << " after " << r.sim.time() << " steps\n";
  };

  const auto reports = run_scenario(cfg.scenario, hooks);
  write_errors(out, reports);
  if (!run.quiet) print_summary(reports);
  return kOk;
}

int run_dam(const Options& o) {
  ParsedConfig cfg = load(o);
  if (cfg.scenario.kind != ScenarioKind::DamBreak) throw ConfigError("dam-break needs a dam_break scenario");
  const RunConfig& run = cfg.run;
  const fs::path out = run.output_dir;
  make_dir(out);
  if (run.snapshots_every > 0) {
    make_dir(out / "full");
    make_dir(out / "simplified");
  }

  DamBreakObserver observer = [&](const std::string& label, const Simulation& sim) {
    if (run.snapshots_every == 0 || sim.time() % run.snapshots_every != 0) return;
    write_vtk(out / label / ("snap_" + std::to_string(sim.time()) + ".vtk"), capture(sim));
  };
  const DamBreakResult result = run_dam_break(cfg.scenario.dam_break, observer);

  const fs::path path = out / "front.csv";
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << "step,x_full,x_simplified\n";
  for (const auto& f : result.fronts) os << f.step << ',' << f.x_full << ',' << f.x_simplified << '\n';
  if (!os) throw IoError("failed writing " + path.string());

  if (!run.quiet) {
    for (const auto& f : result.fronts) {
      std::cout << "step " << f.step << ": full " << f.x_full << ", simplified " << f.x_simplified << '\n';
    }
    std::cout << "relative mass drift " << result.relative_mass_drift() << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-surface lattice Boltzmann boundary rule study"};
  app.require_subcommand(1);

  Options run_opts, study_opts, dam_opts;
  auto* run_cmd = app.add_subcommand("run", "Run the first resolution of a scenario");
  add_common(run_cmd, run_opts);
  auto* study_cmd = app.add_subcommand("study", "Run every resolution and fit the convergence order");
  add_common(study_cmd, study_opts);
  auto* dam_cmd = app.add_subcommand("dam-break", "Compare surge fronts of the full and simplified rule");
  add_common(dam_cmd, dam_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run_cmd) return run_study(run_opts, true);
    if (*study_cmd) return run_study(study_opts, false);
    return run_dam(dam_opts);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const ParameterError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const DivergenceError& e) {
    std::cerr << "diverged: " << e.what() << '\n';
    return kDivergence;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
}
