#include "fslbm/field.hpp"

#include <cassert>

namespace fslbm {

const char* to_string(CellFlag f) {
  switch (f) {
    case CellFlag::Gas: return "gas";
    case CellFlag::Interface: return "interface";
    case CellFlag::Liquid: return "liquid";
    case CellFlag::Wall: return "wall";
  }
  return "?";
}

Grid::Grid(Extent extent, Topology topology) : extent_(extent), topology_(topology) {
  if (extent.nx < 1 || extent.ny < 1 || extent.nz < 1) {
    throw ParameterError("grid extent must be positive in every direction");
  }
  const auto& model = d3q19();
  neighbors_.resize(size() * kQ);
  for (CellIndex c = 0; c < size(); ++c) {
    for (int q = 0; q < kQ; ++q) neighbors_[c * kQ + q] = shifted(c, model.velocities[q]);
  }
}

IntVec3 Grid::coords(CellIndex c) const {
  const auto nx = static_cast<CellIndex>(extent_.nx);
  const auto ny = static_cast<CellIndex>(extent_.ny);
  return {static_cast<int>(c % nx), static_cast<int>((c / nx) % ny), static_cast<int>(c / (nx * ny))};
}

Vec3 Grid::center(CellIndex c) const {
  const auto ijk = coords(c);
  return {ijk[0] + 0.5, ijk[1] + 0.5, ijk[2] + 0.5};
}

namespace {

bool wrap(int& v, int n, bool periodic, int* carry = nullptr) {
  while (v >= n) {
    if (!periodic) return false;
    v -= n;
    if (carry) ++*carry;
  }
  while (v < 0) {
    if (!periodic) return false;
    v += n;
    if (carry) --*carry;
  }
  return true;
}

}  // namespace

CellIndex Grid::shifted(CellIndex c, const IntVec3& offset) const {
  const auto ijk = coords(c);
  int i = ijk[0] + offset[0];
  int j = ijk[1] + offset[1];
  int k = ijk[2] + offset[2];
  int turns = 0;
  if (!wrap(i, extent_.nx, topology_.periodic_x, &turns)) return kNoCell;
  k -= turns * topology_.x_wrap_z_shift;
  if (!wrap(j, extent_.ny, topology_.periodic_y)) return kNoCell;
  if (!wrap(k, extent_.nz, topology_.periodic_z)) return kNoCell;
  return index(i, j, k);
}

Populations DistributionField::get(CellIndex c) const { return load(current_, c); }

void DistributionField::set(CellIndex c, const Populations& f) { store(current_, c, f); }

void stream(std::span<const double> src, std::span<double> dst, const Grid& grid,
            std::span<const CellFlag> flags, const LatticeModel& model) {
  assert(src.data() != dst.data());
  const CellIndex n = grid.size();
  for (CellIndex x = 0; x < n; ++x) {
    if (!is_active(flags[x])) continue;
    double* out = dst.data() + x * kQ;
    out[0] = src[x * kQ];
    for (int q = 1; q < kQ; ++q) {
      const CellIndex upwind = grid.neighbor(x, model.opposite[q]);
      if (upwind == kNoCell || !is_active(flags[upwind])) continue;
      out[q] = src[upwind * kQ + q];
    }
  }
}

}  // namespace fslbm
