#include "fslbm/free_surface.hpp"

#include <algorithm>
#include <numeric>

namespace fslbm {

double MassField::total() const { return std::accumulate(mass.begin(), mass.end(), 0.0) + residual; }

std::vector<CellIndex> distinct_neighbors(const Grid& grid, CellIndex c) {
  std::vector<CellIndex> out;
  out.reserve(kQ - 1);
  for (int q = 1; q < kQ; ++q) {
    const CellIndex nb = grid.neighbor(c, q);
    if (nb == kNoCell || nb == c) continue;
    if (std::find(out.begin(), out.end(), nb) == out.end()) out.push_back(nb);
  }
  return out;
}

void exchange_mass(std::span<const double> post, const Grid& grid, std::span<const CellFlag> flags,
                   std::span<const double> fill, MassField& mass, const LatticeModel& model) {
  const CellIndex n = grid.size();
  for (CellIndex x = 0; x < n; ++x) {
    if (flags[x] != CellFlag::Interface) continue;
    double dm = 0.0;
    for (int q = 1; q < kQ; ++q) {
      const CellIndex y = grid.neighbor(x, q);
      if (y == kNoCell) continue;
      const double flux = post[y * kQ + model.opposite[q]] - post[x * kQ + q];
      if (flags[y] == CellFlag::Liquid) {
        dm += flux;
      } else if (flags[y] == CellFlag::Interface) {
        dm += 0.5 * (fill[x] + fill[y]) * flux;
      }
    }
    mass.mass[x] += dm;
  }
}

std::vector<ConversionEvent> update_flags(const Grid& grid, std::span<CellFlag> flags, std::span<double> fill,
                                          MassField& mass, std::span<const double> rho, double epsilon) {
  const CellIndex n = grid.size();
  std::vector<CellIndex> filled;
  std::vector<char> emptied(n, 0);
  for (CellIndex x = 0; x < n; ++x) {
    if (flags[x] != CellFlag::Interface) continue;
    // Cells cut off from the gas or from the liquid can no longer gain or lose
    // mass through the interface; convert them as in the original tracking scheme.
    bool has_gas = false;
    bool has_liquid = false;
    for (int q = 1; q < kQ; ++q) {
      const CellIndex y = grid.neighbor(x, q);
      if (y == kNoCell) continue;
      has_gas = has_gas || flags[y] == CellFlag::Gas;
      has_liquid = has_liquid || flags[y] == CellFlag::Liquid;
    }
    if (mass.mass[x] >= (1.0 + epsilon) * rho[x] || !has_gas) {
      filled.push_back(x);
    } else if (mass.mass[x] <= -epsilon * rho[x] || !has_liquid) {
      emptied[x] = 1;
    }
  }

  std::vector<ConversionEvent> events;
  std::vector<ConversionEvent> excess;  // converted cells still owing their excess mass

  for (CellIndex x : filled) {
    flags[x] = CellFlag::Liquid;
    excess.push_back({x, ConversionKind::InterfaceToLiquid, mass.mass[x] - rho[x]});
    mass.mass[x] = rho[x];
    for (CellIndex y : distinct_neighbors(grid, x)) {
      emptied[y] = 0;
      if (flags[y] == CellFlag::Gas) {
        flags[y] = CellFlag::Interface;
        mass.mass[y] = 0.0;
        events.push_back({y, ConversionKind::GasToInterface, 0.0});
      }
    }
  }
  for (CellIndex x = 0; x < n; ++x) {
    if (!emptied[x]) continue;
    flags[x] = CellFlag::Gas;
    excess.push_back({x, ConversionKind::InterfaceToGas, mass.mass[x]});
    mass.mass[x] = 0.0;
    for (CellIndex y : distinct_neighbors(grid, x)) {
      if (flags[y] == CellFlag::Liquid) {
        flags[y] = CellFlag::Interface;
        events.push_back({y, ConversionKind::LiquidToInterface, 0.0});
      }
    }
  }

  mass.isolated_warnings = 0;
  for (const auto& ev : excess) {
    std::vector<CellIndex> recipients;
    for (CellIndex y : distinct_neighbors(grid, ev.cell)) {
      if (flags[y] == CellFlag::Interface) recipients.push_back(y);
    }
    if (recipients.empty()) {
      mass.residual += ev.excess_mass;
      ++mass.isolated_warnings;
    } else {
      const double share = ev.excess_mass / static_cast<double>(recipients.size());
      for (CellIndex y : recipients) mass.mass[y] += share;
    }
    events.push_back(ev);
  }

  for (CellIndex x = 0; x < n; ++x) {
    switch (flags[x]) {
      case CellFlag::Liquid: fill[x] = 1.0; break;
      case CellFlag::Interface: fill[x] = rho[x] > 0.0 ? std::clamp(mass.mass[x] / rho[x], 0.0, 1.0) : 0.0; break;
      default: fill[x] = 0.0; break;
    }
  }

  std::stable_sort(events.begin(), events.end(), [](const ConversionEvent& a, const ConversionEvent& b) {
    return a.cell < b.cell;
  });
  return events;
}

MacroState init_new_interface_cell(CellIndex cell, std::span<double> populations, const Grid& grid,
                                   std::span<const CellFlag> flags, std::span<const double> rho,
                                   std::span<const Vec3> u, std::span<const CellIndex> fresh_cells,
                                   const TrtParams& params, const LatticeModel& model) {
  MacroState avg{0.0, Vec3::Zero()};
  int count = 0;
  for (CellIndex y : distinct_neighbors(grid, cell)) {
    if (!is_active(flags[y])) continue;
    if (std::find(fresh_cells.begin(), fresh_cells.end(), y) != fresh_cells.end()) continue;
    avg.rho += rho[y];
    avg.u += u[y];
    ++count;
  }
  if (count == 0) {
    avg = MacroState{};
  } else {
    avg.rho /= count;
    avg.u /= count;
  }
  store(populations, cell, equilibrium_for_moments(avg, params, model));
  return avg;
}

}  // namespace fslbm
