#pragma once

#include "fslbm/types.hpp"

#include <boost/rational.hpp>

#include <array>
#include <cstdint>

namespace fslbm {

inline constexpr int kQ = 19;

/// One value per lattice direction.
using Populations = std::array<double, kQ>;
using Rational = boost::rational<std::int64_t>;
using IntVec3 = std::array<int, 3>;

/**
 * D3Q19 velocity set.
 *
 * Index layout (fixed, used by every output file):
 *   0        rest
 *   1..6     (+x, -x, +y, -y, +z, -z)
 *   7..18    face diagonals, in opposite pairs (q, q+1) for odd q
 *
 * With this ordering opposite(q) = q+1 for odd q and q-1 for even q > 0.
 */
struct LatticeModel {
  std::array<IntVec3, kQ> velocities;
  std::array<Rational, kQ> weights_exact;
  std::array<double, kQ> weights;
  std::array<int, kQ> opposite;
  Rational cs2_exact;
  double cs2;

  double cx(int q) const { return velocities[q][0]; }
  double cy(int q) const { return velocities[q][1]; }
  double cz(int q) const { return velocities[q][2]; }
  Vec3 c(int q) const { return {cx(q), cy(q), cz(q)}; }
};

LatticeModel build_d3q19();

/// Process-wide immutable instance.
const LatticeModel& d3q19();

struct EvenOddParts {
  Populations even;
  Populations odd;
};

/// f+_q = (f_q + f_qbar)/2, f-_q = (f_q - f_qbar)/2.
EvenOddParts even_odd_split(const Populations& f, const LatticeModel& model);

}  // namespace fslbm
