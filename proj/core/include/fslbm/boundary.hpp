#pragma once

#include "fslbm/collision.hpp"
#include "fslbm/field.hpp"

#include <optional>
#include <span>

namespace fslbm {

/**
 * Coefficients of the linear link-wise closure
 *
 *   f_qbar(x_b, t+1) = a0 f~_q(x_b) + abar0 f~_qbar(x_b) + a1 f~_q(x_b - c_q)
 *                    + C n+_q(x_b) + alpha_plus e+_q(rho_b, u_b) + D c_qa c_qb S^b_ab
 *
 * where q points from the boundary node x_b out of the domain and the wall
 * point is x_b + delta c_q.
 */
struct ClosureCoefficients {
  double a0 = 0.0;
  double abar0 = 0.0;
  double a1 = 0.0;
  double alpha_plus = 0.0;
  double C = 0.0;
  double D = 0.0;
  double delta = 0.5;
};

/// Macroscopic data imposed at the wall point.
struct BoundaryValue {
  double rho_b = 1.0;
  Vec3 u_b = Vec3::Zero();
  Mat3 S_b = Mat3::Zero();  // symmetric shear rate 1/2 (d_a j_b + d_b j_a)
};

struct LinkCut {
  CellIndex cell = kNoCell;
  int q = 0;
  double delta = 0.5;
};

/// Read-only view of the solver state a closure needs.
struct LinkFields {
  const Grid& grid;
  std::span<const CellFlag> flags;
  std::span<const double> pre;   // populations at time t
  std::span<const double> post;  // post-collision populations at time t
  std::span<const double> rho;   // moments of `pre`
  std::span<const Vec3> u;
};

/// Original local free-surface rule (Koerner et al.). `simplified` forces D = 0.
ClosureCoefficients fsk_coefficients(int q, const TrtParams& params, const LatticeModel& model,
                                     bool simplified = false);

/// Second-order free-surface rule based on linear interpolation along the link.
ClosureCoefficients fsl_coefficients(int q, double delta, const TrtParams& params, const LatticeModel& model,
                                     bool simplified = false);

/// n+_q(x_b, t) from the pre-collision state.
double even_nonequilibrium(CellIndex cell, int q, const LinkFields& fields, const TrtParams& params,
                           const LatticeModel& model);

/// Evaluates the closure. Returns nullopt when a1 != 0 but x_b - c_q is not an
/// active cell; callers then fall back to the local FSK rule.
std::optional<double> apply_closure(const ClosureCoefficients& coeffs, const LinkCut& cut, const LinkFields& fields,
                                    const BoundaryValue& bval, const TrtParams& params, const LatticeModel& model);

/// Half-way bounce-back, optionally for a wall moving with u_wall.
double bounce_back(const LinkCut& cut, const LinkFields& fields, const TrtParams& params = {},
                   const LatticeModel& model = d3q19(), const Vec3& u_wall = Vec3::Zero());

/**
 * Central linear interpolation no-slip rule for an arbitrary cut delta:
 *   f_qbar = f~_q(x_b) + k (f~_q(x_b - c_q) - f~_qbar(x_b)) - 4/(1+2 delta) e-_q(u_wall),
 *   k = (1 - 2 delta) / (1 + 2 delta).
 * Reduces to bounce-back at delta = 1/2 and falls back to it when x_b - c_q is inactive.
 */
double cli_wall(const LinkCut& cut, const LinkFields& fields, const TrtParams& params,
                const LatticeModel& model = d3q19(), const Vec3& u_wall = Vec3::Zero());

/// Which frame components project_stress overwrites; nullopt leaves them untouched.
struct StressTargets {
  std::optional<double> tangential_normal = 0.0;
  std::optional<double> normal_normal;
};

/// Orthonormal frame {t1, t2, n} as matrix columns.
Mat3 local_frame(const Vec3& n);

/**
 * Rotates S into the local interface frame, overwrites the components
 * dictated by the free-surface stress condition and rotates back.
 * Throws ParameterError for a zero normal.
 */
Mat3 project_stress(const Mat3& S, const Vec3& n, const StressTargets& targets = {});

/**
 * Velocity at the wall point x_b + delta c_q by linear extrapolation from
 * x_b - c_q and x_b; the node velocity when x_b - c_q is not active.
 */
Vec3 link_velocity(const LinkCut& cut, const LinkFields& fields, const LatticeModel& model = d3q19());

/// Outward (liquid -> gas) unit normal from central differences of the fill field.
std::optional<Vec3> interface_normal(CellIndex cell, const Grid& grid, std::span<const CellFlag> flags,
                                     std::span<const double> fill);

/// Shear rate 1/2 (d_a j_b + d_b j_a) from one-sided differences towards the liquid side.
Mat3 shear_rate(CellIndex cell, const LinkFields& fields, std::span<const double> fill, const TrtParams& params);

/**
 * Shear rate recovered from the non-equilibrium even populations of one cell.
 * Needs no neighbours, so it stays stable where the explicit stencil feeds
 * back into the closure.
 */
Mat3 local_shear_rate(CellIndex cell, const LinkFields& fields, const TrtParams& params,
                      const LatticeModel& model = d3q19());

/// Link cut fraction from the fill field: linear interpolation to phi = 1/2, clamped to [0, 1].
double delta_from_fill(const LinkCut& cut, const Grid& grid, std::span<const double> fill);

/**
 * Next-neighbour boundary values at a free-surface link: rho_b is the gas
 * density, u_b the boundary node velocity, S_b the cell's local_shear_rate with the
 * tangential-normal components removed in the interface frame (zero when no
 * normal can be estimated).
 */
BoundaryValue extrapolate_boundary_values(const LinkCut& cut, const LinkFields& fields, std::span<const double> fill,
                                          const TrtParams& params, double rho_gas = 1.0);

}  // namespace fslbm
