#pragma once

#include "fslbm/channel.hpp"
#include "fslbm/dam_break.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fslbm {

enum class ScenarioKind { PlateTransient, Couette, Poiseuille, Film, DamBreak };

const char* to_string(ScenarioKind kind);
ScenarioKind parse_scenario_kind(const std::string& name);

const char* to_string(WallRule rule);
WallRule parse_wall_rule(const std::string& name);

struct SteadyCriterion {
  /// Stop once max|u(t) - u(t - interval)| / max|u(t)| drops below this.
  double tolerance = 1e-12;
  int interval = 100;
  std::uint64_t max_steps = 20'000'000;
};

/**
 * Declarative description of one experiment. Lengths, forcing and shear are
 * given for resolution 1; resolution s uses height * s, gravity / s^3 and
 * shear / s^2 so the Reynolds number stays fixed while dx = 1 / s.
 */
struct Scenario {
  std::string name;
  ScenarioKind kind = ScenarioKind::Film;
  SurfaceRule rule = SurfaceRule::Fsl;
  WallRule wall = WallRule::BounceBack;

  double height = 8.0;
  Slope slope;

  double lambda_plus = -1.0;
  double magic = 0.25;
  EquilibriumForm form = EquilibriumForm::Incompressible;
  bool nonlinear = true;

  double gravity = 0.0;
  double wall_velocity = 0.001;
  /// Velocity gradient du/dn of the Couette profile.
  double shear = 0.002;

  std::vector<double> resolutions{1.0};
  /// Dimensionless sample times mu t / (rho h^2) of the plate transient.
  std::vector<double> times;

  SteadyCriterion steady;
  /// Start steady runs from the equilibrium of the analytic profile instead of rest.
  bool analytic_init = false;

  DamBreakSetup dam_break;

  TrtParams params_at(double scale) const;
  /// Throws ParameterError on inconsistent settings.
  void validate() const;
};

struct ErrorReport {
  std::string scenario;
  std::string rule;
  std::string series;
  double dx = 1.0;
  double h = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  std::uint64_t steps = 0;
  /// Set on every row of a series with at least three resolutions.
  std::optional<double> observed_order;
  bool exact = false;
};

/// Everything a caller might want to inspect after one resolution finished.
struct ResolutionResult {
  const Scenario& scenario;
  double scale;
  const Simulation& sim;
  const ChannelGeometry& geometry;
  /// Analytic velocity at every active cell, in geometry.active order.
  const std::vector<Vec3>& oracle;
};

struct RunHooks {
  std::function<void(double scale, const Simulation& sim)> on_step;
  std::function<void(const ResolutionResult&)> on_finish;
};

/// Steady state or sampled transient for every resolution; dam breaks are rejected (see run_dam_break).
std::vector<ErrorReport> run_scenario(const Scenario& scenario, const RunHooks& hooks = {});

/// Fills observed_order per series from the L2 errors.
void assign_orders(std::vector<ErrorReport>& reports);

void write_errors_csv(std::ostream& os, const std::vector<ErrorReport>& reports);

}  // namespace fslbm
