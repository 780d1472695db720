#pragma once

#include "fslbm/collision.hpp"
#include "fslbm/field.hpp"

#include <span>
#include <vector>

namespace fslbm {

enum class ConversionKind { InterfaceToLiquid, InterfaceToGas, GasToInterface, LiquidToInterface };

struct ConversionEvent {
  CellIndex cell = kNoCell;
  ConversionKind kind = ConversionKind::InterfaceToLiquid;
  double excess_mass = 0.0;
};

/// Per-cell liquid mass plus the bookkeeping needed to keep the total exact.
struct MassField {
  std::vector<double> mass;
  /// Excess mass that found no interface neighbour to absorb it.
  double residual = 0.0;
  /// Cells whose excess went to the residual during the last update.
  std::size_t isolated_warnings = 0;

  double total() const;
};

/// Default conversion hysteresis.
inline constexpr double kConversionEpsilon = 1e-3;

/**
 * Mass flux across every interface link, from post-collision populations:
 *   dm = (f~_qbar(x + c_q) - f~_q(x)) * w,
 * w = 1 towards liquid neighbours and (phi(x) + phi(x + c_q)) / 2 between
 * interface cells. The flux is antisymmetric per link, so the sum over liquid
 * density and interface mass is conserved.
 */
void exchange_mass(std::span<const double> post, const Grid& grid, std::span<const CellFlag> flags,
                   std::span<const double> fill, MassField& mass, const LatticeModel& model = d3q19());

/**
 * Converts interface cells crossing the fill thresholds, restores the
 * liquid/gas separation, redistributes excess mass evenly over interface
 * neighbours and refreshes the fill fraction (m / rho, clamped). Events are
 * emitted in deterministic cell-index order.
 *
 * Cells turned from gas into interface still carry stale populations; the
 * caller initialises them with init_new_interface_cell.
 */
std::vector<ConversionEvent> update_flags(const Grid& grid, std::span<CellFlag> flags, std::span<double> fill,
                                          MassField& mass, std::span<const double> rho,
                                          double epsilon = kConversionEpsilon);

/// Sets a newly activated cell to the equilibrium of the mean (rho, u) of its
/// pre-existing liquid/interface neighbours. Returns the state it was given.
MacroState init_new_interface_cell(CellIndex cell, std::span<double> populations, const Grid& grid,
                                   std::span<const CellFlag> flags, std::span<const double> rho,
                                   std::span<const Vec3> u, std::span<const CellIndex> fresh_cells,
                                   const TrtParams& params, const LatticeModel& model = d3q19());

/// Distinct neighbour cells of c over the 18 moving directions, excluding c itself.
std::vector<CellIndex> distinct_neighbors(const Grid& grid, CellIndex c);

}  // namespace fslbm
