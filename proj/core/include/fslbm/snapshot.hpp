#pragma once

#include "fslbm/solver.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace fslbm {

/// Point data of one field snapshot, x fastest.
struct SnapshotData {
  Extent extent;
  std::vector<double> density;
  std::vector<Vec3> velocity;
  std::vector<double> fill;
  std::vector<int> flag;  // CellFlag as integer

  bool operator==(const SnapshotData& other) const;
};

SnapshotData capture(const Simulation& sim);

/// Legacy ASCII VTK structured points, 17 significant digits so that reading back is lossless.
void write_vtk(std::ostream& os, const SnapshotData& data, const std::string& title = "fslbm snapshot");
void write_vtk(const std::filesystem::path& path, const SnapshotData& data);

/// Parses files produced by write_vtk. Throws IoError on malformed input.
SnapshotData read_vtk(std::istream& is);
SnapshotData read_vtk(const std::filesystem::path& path);

/**
 * Line extract along one axis (0 = x, 1 = y, 2 = z) through cell (i, j, k) = origin:
 * index, node coordinate, rho, u_x, u_y, u_z, fill, flag.
 */
void write_profile_csv(std::ostream& os, const Simulation& sim, int axis, const IntVec3& origin = {0, 0, 0});
void write_profile_csv(const std::filesystem::path& path, const Simulation& sim, int axis,
                       const IntVec3& origin = {0, 0, 0});

}  // namespace fslbm
