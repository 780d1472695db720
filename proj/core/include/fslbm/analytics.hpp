#pragma once

#include "fslbm/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace fslbm {

/**
 * Impulsively started plate above a stress-free surface at z = 0, the plate
 * sitting at z = h and moving with u_wall:
 *
 *   u / u_wall = 1 - sum_k 4 (-1)^k / ((2k+1) pi) exp(-(2k+1)^2 pi^2 mu t / (4 rho h^2)) cos((2k+1) pi z / (2h))
 *
 * With k_max unset the series is summed until the magnitude of the last term
 * drops below 1e-14 u_wall.
 */
double oracle_plate_transient(double z, double t, double h, double mu, double rho, double u_wall,
                              std::optional<int> k_max = std::nullopt);

/// Linear shear flow u = shear * z.
double oracle_couette(double z, double h, double shear);

/// Gravity-driven film on a no-slip floor with a stress-free top: u = (g / nu) (h z - z^2 / 2).
double oracle_film_parabola(double z, double h, double g, double nu);

/// Plane Poiseuille flow between no-slip walls at 0 and h: u = g / (2 nu) z (h - z).
double oracle_poiseuille(double z, double h, double g, double nu);

struct ErrorNorms {
  double l2 = 0.0;
  double linf = 0.0;
  /// True when the oracle vanished and the norms are absolute instead of relative.
  bool absolute = false;
};

/// Relative L2 (root of the ratio of the sums of squares) and max-norm errors.
ErrorNorms error_norms(std::span<const double> field, std::span<const double> oracle);

/// Same norms for vector fields, using Euclidean magnitudes per sample.
ErrorNorms error_norms(std::span<const Vec3> field, std::span<const Vec3> oracle);

/// (1 / u_wall) sqrt((1/h) sum (u - u_id)^2), the transient plate error measure.
double plate_error(std::span<const double> field, std::span<const double> oracle, double h, double u_wall);

/// Observed convergence order, or nullopt when some error is zero or non-finite ("exact").
struct OrderEstimate {
  std::optional<double> order;
  bool exact() const { return !order.has_value(); }
};

/**
 * Least-squares slope of log(error) against log(dx). Throws ParameterError
 * for fewer than three samples or mismatched lengths.
 */
OrderEstimate observed_order(std::span<const double> dx, std::span<const double> errors);

}  // namespace fslbm
