#pragma once

#include "fslbm/solver.hpp"

#include <vector>

namespace fslbm {

/// Channel inclination as an exact rational rise/run (0/1 for a straight channel).
struct Slope {
  int rise = 0;
  int run = 1;

  double angle() const;
  bool straight() const { return rise == 0; }
};

/**
 * A planar channel 0 < d < height, where d = n . (x - origin) is the distance
 * from the bottom plane along its unit normal n = (-sin a, 0, cos a).
 *
 * Straight channels use a 1 x 1 x nz column. Inclined ones use a skew-periodic
 * run x 1 x nz box: leaving through +x re-enters rise cells lower, which
 * matches the channel's own translation symmetry, so only one period is stored.
 */
struct ChannelSpec {
  double height = 8.0;
  Slope slope;
  std::uint16_t bottom_condition = 0;
  std::uint16_t top_condition = 0;
  /// Flags given to the inactive cells on either side.
  CellFlag below = CellFlag::Wall;
  CellFlag above = CellFlag::Wall;
  /// Height of the bottom plane above z = 0 at x = 0; one layer leaves room for the cells below it.
  double z_offset = 1.0;
};

struct ChannelGeometry {
  Grid grid;
  std::vector<CellFlag> flags;
  std::vector<BoundaryLink> links;
  /// Signed wall distance d of every node (all cells).
  std::vector<double> distance;
  /// Active cells in index order.
  std::vector<CellIndex> active;
  Vec3 normal = Vec3::UnitZ();
  Vec3 tangent = Vec3::UnitX();
};

ChannelGeometry build_channel(const ChannelSpec& spec);

/// Installs geometry flags and links into a freshly constructed simulation.
void apply_channel(Simulation& sim, const ChannelGeometry& geometry);

}  // namespace fslbm
