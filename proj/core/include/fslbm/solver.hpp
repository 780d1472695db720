#pragma once

#include "fslbm/boundary.hpp"
#include "fslbm/collision.hpp"
#include "fslbm/field.hpp"
#include "fslbm/free_surface.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace fslbm {

enum class WallRule { BounceBack, Cli };

enum class SurfaceRule { Fsk, FskSimplified, Fsl, FslSimplified };

const char* to_string(SurfaceRule rule);
SurfaceRule parse_surface_rule(const std::string& name);

enum class StressMode {
  Zero,          // S^b = 0
  Imposed,       // S^b given explicitly
  Extrapolated,  // local shear rate of the boundary node, projected onto the interface frame
};

struct WallBoundary {
  WallRule rule = WallRule::BounceBack;
  Vec3 velocity = Vec3::Zero();
};

struct SurfaceBoundary {
  SurfaceRule rule = SurfaceRule::Fsl;
  StressMode stress = StressMode::Zero;
  Mat3 imposed = Mat3::Zero();
  double rho_gas = 1.0;
};

using BoundaryCondition = std::variant<WallBoundary, SurfaceBoundary>;

/// One cut link; `condition` indexes Simulation::conditions().
struct BoundaryLink {
  CellIndex cell = kNoCell;
  int q = 0;
  double delta = 0.5;
  std::uint16_t condition = 0;
};

/// Liquid-side stability bound for the divergence detector.
inline constexpr double kMaxLatticeVelocity = 0.3;

/**
 * Time stepper shared by the channel scenarios and the dam break.
 *
 * One step:
 *   1. collide every active cell (current -> next), keeping the pre-collision moments
 *   2. free-surface runs only: exchange mass across interface links
 *   3. evaluate the closure of every cut link (reads pre- and post-collision data)
 *   4. stream next -> current and write the closure values
 *   5. free-surface runs only: convert cells and initialise new interface cells
 *
 * Static geometries supply their cut links once. Free-surface runs derive them
 * each step from the flags: links into walls or out of the box use the wall
 * condition, links into gas cells the surface condition.
 */
class Simulation {
 public:
  Simulation(Grid grid, TrtParams params);

  const Grid& grid() const { return grid_; }
  const TrtParams& params() const { return params_; }
  std::uint64_t time() const { return time_; }

  std::span<CellFlag> flags() { return flags_; }
  std::span<const CellFlag> flags() const { return flags_; }
  std::span<double> fill() { return fill_; }
  std::span<const double> fill() const { return fill_; }
  DistributionField& populations() { return pdf_; }
  const DistributionField& populations() const { return pdf_; }

  /// Moments of the current populations (valid after initialise() and step()).
  std::span<const double> rho() const { return rho_; }
  std::span<const Vec3> u() const { return u_; }

  std::uint16_t add_condition(BoundaryCondition condition);
  const std::vector<BoundaryCondition>& conditions() const { return conditions_; }

  void set_static_links(std::vector<BoundaryLink> links);
  const std::vector<BoundaryLink>& static_links() const { return static_links_; }

  /// Switches to flag-driven boundaries with VOF tracking.
  void enable_free_surface(std::uint16_t wall_condition, std::uint16_t surface_condition,
                           double epsilon = kConversionEpsilon);
  bool free_surface_enabled() const { return free_surface_; }
  MassField& mass() { return mass_; }
  const MassField& mass() const { return mass_; }
  const std::vector<ConversionEvent>& last_events() const { return events_; }

  /// Equilibrium populations for the given per-cell state on active cells.
  template <typename StateFn>
  void initialise(StateFn&& state_of) {
    const auto& model = d3q19();
    for (CellIndex c = 0; c < grid_.size(); ++c) {
      if (!is_active(flags_[c])) continue;
      const MacroState s = state_of(c);
      pdf_.set(c, equilibrium_for_moments(s, params_, model));
    }
    refresh_moments();
    if (free_surface_) reset_mass();
  }

  void step();

  /// Recomputes rho/u from the current populations.
  void refresh_moments();

  /// Liquid mass from the flags/fill/rho (m = phi rho on the interface).
  void reset_mass();

  /// Throws DivergenceError on NaN or |u| above kMaxLatticeVelocity.
  void check_stability() const;

 private:
  double closure_value(const BoundaryLink& link, const LinkFields& fields) const;
  void collect_dynamic_links();
  void free_surface_update();

  Grid grid_;
  TrtParams params_;
  DistributionField pdf_;
  std::vector<CellFlag> flags_;
  std::vector<double> fill_;
  std::vector<double> rho_;
  std::vector<Vec3> u_;

  std::vector<BoundaryCondition> conditions_;
  std::vector<BoundaryLink> static_links_;
  std::vector<BoundaryLink> dynamic_links_;
  std::vector<double> closure_buffer_;

  bool free_surface_ = false;
  std::uint16_t wall_condition_ = 0;
  std::uint16_t surface_condition_ = 0;
  double epsilon_ = kConversionEpsilon;
  MassField mass_;
  std::vector<ConversionEvent> events_;

  std::uint64_t time_ = 0;
  double max_speed_sq_ = 0.0;
  bool non_finite_ = false;
};

}  // namespace fslbm
