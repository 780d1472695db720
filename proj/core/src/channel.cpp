#include "fslbm/channel.hpp"

#include <algorithm>
#include <cmath>

namespace fslbm {

double Slope::angle() const { return std::atan2(static_cast<double>(rise), static_cast<double>(run)); }

ChannelGeometry build_channel(const ChannelSpec& spec) {
  if (!(spec.height > 1.0)) throw ParameterError("channel height must exceed one lattice spacing");
  if (spec.slope.run < 1 || spec.slope.rise < 0) throw ParameterError("channel slope must be rise/run with run >= 1");

  const double a = spec.slope.angle();
  ChannelGeometry g;
  g.normal = Vec3(-std::sin(a), 0.0, std::cos(a));
  g.tangent = Vec3(std::cos(a), 0.0, std::sin(a));

  const int nx = spec.slope.straight() ? 1 : spec.slope.run;
  // The channel spans z in [z0 + x tan a, z0 + x tan a + h / cos a] over one period; keep two spare layers.
  const double top = spec.z_offset + spec.slope.rise + spec.height / std::cos(a);
  const int nz = static_cast<int>(std::ceil(top)) + 2;
  Topology topo;
  topo.periodic_x = true;
  topo.periodic_y = true;
  topo.x_wrap_z_shift = spec.slope.straight() ? 0 : spec.slope.rise;
  g.grid = Grid(Extent{nx, 1, nz}, topo);

  const Vec3 origin(0.0, 0.0, spec.z_offset);
  const std::size_t n = g.grid.size();
  g.flags.assign(n, CellFlag::Liquid);
  g.distance.resize(n);
  for (CellIndex c = 0; c < n; ++c) {
    const double d = g.normal.dot(g.grid.center(c) - origin);
    g.distance[c] = d;
    if (d <= 0.0) {
      g.flags[c] = spec.below;
    } else if (d >= spec.height) {
      g.flags[c] = spec.above;
    } else {
      g.active.push_back(c);
    }
  }

  const auto& model = d3q19();
  for (CellIndex c : g.active) {
    const double d = g.distance[c];
    for (int q = 1; q < kQ; ++q) {
      const CellIndex nb = g.grid.neighbor(c, q);
      if (nb == kNoCell) throw ParameterError("channel does not fit its box");
      // The neighbour's own flag decides, so nodes lying on a plane are treated consistently.
      if (is_active(g.flags[nb])) continue;
      const double dn = g.normal.dot(model.c(q));
      if (g.distance[nb] <= 0.0) {
        g.links.push_back({c, q, std::clamp(-d / dn, 0.0, 1.0), spec.bottom_condition});
      } else {
        g.links.push_back({c, q, std::clamp((spec.height - d) / dn, 0.0, 1.0), spec.top_condition});
      }
    }
  }
  return g;
}

void apply_channel(Simulation& sim, const ChannelGeometry& geometry) {
  if (sim.grid().size() != geometry.grid.size()) throw ParameterError("simulation grid does not match channel");
  std::copy(geometry.flags.begin(), geometry.flags.end(), sim.flags().begin());
  auto fill = sim.fill();
  for (CellIndex c = 0; c < geometry.flags.size(); ++c) fill[c] = is_active(geometry.flags[c]) ? 1.0 : 0.0;
  sim.set_static_links(geometry.links);
}

}  // namespace fslbm
