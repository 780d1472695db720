#pragma once

#include "fslbm/lattice.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace fslbm {

enum class CellFlag : std::uint8_t { Gas = 0, Interface = 1, Liquid = 2, Wall = 3 };

inline bool is_active(CellFlag f) { return f == CellFlag::Liquid || f == CellFlag::Interface; }

const char* to_string(CellFlag f);

struct Extent {
  int nx = 1;
  int ny = 1;
  int nz = 1;
};

/// Periodicity per axis. Crossing the +x face optionally shifts z by
/// -x_wrap_z_shift cells, which makes a channel with slope
/// x_wrap_z_shift / nx invariant under the wrap (skew-periodic box).
struct Topology {
  bool periodic_x = false;
  bool periodic_y = false;
  bool periodic_z = false;
  int x_wrap_z_shift = 0;
};

/**
 * Uniform cell-centred grid. Cell (i, j, k) has its node at (i+1/2, j+1/2, k+1/2).
 * Neighbour lookups go through a precomputed table so the hot loops never
 * evaluate wrap logic; kNoCell marks links leaving a non-periodic face.
 */
class Grid {
 public:
  Grid() = default;
  Grid(Extent extent, Topology topology);

  const Extent& extent() const { return extent_; }
  const Topology& topology() const { return topology_; }
  std::size_t size() const { return static_cast<std::size_t>(extent_.nx) * extent_.ny * extent_.nz; }

  CellIndex index(int i, int j, int k) const {
    return static_cast<CellIndex>(i) + static_cast<CellIndex>(extent_.nx) * (j + static_cast<CellIndex>(extent_.ny) * k);
  }
  IntVec3 coords(CellIndex c) const;
  Vec3 center(CellIndex c) const;

  /// Cell reached from c by an arbitrary integer offset, honouring periodicity.
  CellIndex shifted(CellIndex c, const IntVec3& offset) const;

  /// Cell at x + c_q.
  CellIndex neighbor(CellIndex c, int q) const { return neighbors_[c * kQ + q]; }

 private:
  Extent extent_{};
  Topology topology_{};
  std::vector<CellIndex> neighbors_;
};

/// Two population buffers, array-of-structures (19 contiguous values per cell).
class DistributionField {
 public:
  DistributionField() = default;
  explicit DistributionField(std::size_t cells) : current_(cells * kQ, 0.0), next_(cells * kQ, 0.0) {}

  std::size_t cells() const { return current_.size() / kQ; }

  std::span<double> current() { return current_; }
  std::span<const double> current() const { return current_; }
  std::span<double> next() { return next_; }
  std::span<const double> next() const { return next_; }

  Populations get(CellIndex c) const;
  void set(CellIndex c, const Populations& f);

  void swap() { current_.swap(next_); }

 private:
  std::vector<double> current_;
  std::vector<double> next_;
};

inline Populations load(std::span<const double> buffer, CellIndex c) {
  Populations f;
  for (int q = 0; q < kQ; ++q) f[q] = buffer[c * kQ + q];
  return f;
}

inline void store(std::span<double> buffer, CellIndex c, const Populations& f) {
  for (int q = 0; q < kQ; ++q) buffer[c * kQ + q] = f[q];
}

/**
 * Pull streaming: dst_q(x) = src_q(x - c_q) for every active x whose upwind
 * cell x - c_q is active too. Populations with an inactive or missing upwind
 * cell are left untouched; boundary closures fill them.
 *
 * src and dst must be distinct buffers.
 */
void stream(std::span<const double> src, std::span<double> dst, const Grid& grid,
            std::span<const CellFlag> flags, const LatticeModel& model);

}  // namespace fslbm
