#include "fslbm/lattice.hpp"

namespace fslbm {

LatticeModel build_d3q19() {
  LatticeModel m{};
  m.velocities = {{
      {0, 0, 0},
      {1, 0, 0},  {-1, 0, 0}, {0, 1, 0},  {0, -1, 0}, {0, 0, 1},   {0, 0, -1},
      {1, 1, 0},  {-1, -1, 0}, {1, -1, 0}, {-1, 1, 0},
      {1, 0, 1},  {-1, 0, -1}, {1, 0, -1}, {-1, 0, 1},
      {0, 1, 1},  {0, -1, -1}, {0, 1, -1}, {0, -1, 1},
  }};
  m.cs2_exact = Rational(1, 3);
  m.cs2 = 1.0 / 3.0;

  for (int q = 0; q < kQ; ++q) {
    const auto& c = m.velocities[q];
    const int speed_sq = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
    switch (speed_sq) {
      case 0: m.weights_exact[q] = Rational(1, 3); break;
      case 1: m.weights_exact[q] = Rational(1, 18); break;
      default: m.weights_exact[q] = Rational(1, 36); break;
    }
    m.weights[q] = boost::rational_cast<double>(m.weights_exact[q]);
  }

  for (int q = 0; q < kQ; ++q) {
    m.opposite[q] = q;
    for (int p = 0; p < kQ; ++p) {
      const auto& a = m.velocities[q];
      const auto& b = m.velocities[p];
      if (a[0] == -b[0] && a[1] == -b[1] && a[2] == -b[2]) {
        m.opposite[q] = p;
        break;
      }
    }
  }
  return m;
}

const LatticeModel& d3q19() {
  static const LatticeModel model = build_d3q19();
  return model;
}

EvenOddParts even_odd_split(const Populations& f, const LatticeModel& model) {
  EvenOddParts parts{};
  for (int q = 0; q < kQ; ++q) {
    const double fb = f[model.opposite[q]];
    parts.even[q] = 0.5 * (f[q] + fb);
    parts.odd[q] = 0.5 * (f[q] - fb);
  }
  return parts;
}

}  // namespace fslbm
