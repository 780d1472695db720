#pragma once

#include "fslbm/solver.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fslbm {

/// Rectangular liquid column released at rest in a closed box (y is periodic, one cell thick).
struct DamBreakSetup {
  int column_width = 80;
  int column_height = 40;
  int domain_width = 320;
  int domain_height = 80;
  double viscosity = 1.0 / 3.0;
  double magic = 3.0 / 16.0;
  /// Lattice gravity; the default gives sqrt(2 g H) = 0.05 for H = 40.
  double gravity = 3.125e-5;
  /// Start from the hydrostatic density profile instead of uniform density.
  bool hydrostatic = true;
  double conversion_epsilon = kConversionEpsilon;
  /// Rule family compared with and without the boundary stress term.
  SurfaceRule rule = SurfaceRule::Fsk;
  std::vector<std::uint64_t> samples{2000, 4000, 6000, 8000};
};

/// Free-surface simulation holding the initial column.
Simulation make_column_simulation(const DamBreakSetup& setup, SurfaceRule rule);

/// One past the index of the rightmost bottom-row cell with fill > 1/2 (0 if none).
int surge_front(const Simulation& sim);

struct FrontSample {
  std::uint64_t step = 0;
  int x_full = 0;
  int x_simplified = 0;
};

struct DamBreakResult {
  std::vector<FrontSample> fronts;  // step 0 first, then every requested sample
  double mass_initial_full = 0.0;
  double mass_final_full = 0.0;
  double mass_initial_simplified = 0.0;
  double mass_final_simplified = 0.0;

  double relative_mass_drift() const;
};

/// Called after every step with the run label ("full" or "simplified").
using DamBreakObserver = std::function<void(const std::string& label, const Simulation& sim)>;

/// Runs the column twice, with the full and the simplified rule of setup.rule's family.
DamBreakResult run_dam_break(const DamBreakSetup& setup, const DamBreakObserver& observer = {});

SurfaceRule full_rule(SurfaceRule rule);
SurfaceRule simplified_rule(SurfaceRule rule);

}  // namespace fslbm
