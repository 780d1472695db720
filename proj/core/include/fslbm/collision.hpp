#pragma once

#include "fslbm/lattice.hpp"

namespace fslbm {

enum class EquilibriumForm {
  Incompressible,  // rho0 = 1
  Compressible,    // rho0 = rho
};

/**
 * Two-relaxation-time parameters.
 *
 * lambda_plus / lambda_minus are the (negative) eigenvalues of the collision
 * operator for the even and odd population parts. Body forcing enters only
 * through the shifted equilibrium velocity u_eq = U - F / (rho0 lambda_minus).
 */
struct TrtParams {
  double lambda_plus = -1.0;
  double lambda_minus = -1.0;
  EquilibriumForm form = EquilibriumForm::Incompressible;
  bool use_nonlinear = true;
  Vec3 force = Vec3::Zero();

  double big_lambda_plus() const { return -(0.5 + 1.0 / lambda_plus); }
  double big_lambda_minus() const { return -(0.5 + 1.0 / lambda_minus); }
  double magic() const { return big_lambda_plus() * big_lambda_minus(); }

  double reference_density(double rho) const { return form == EquilibriumForm::Compressible ? rho : 1.0; }

  /// Throws ParameterError unless both rates lie in (-2, 0).
  void validate() const;

  /// lambda_plus from the kinematic viscosity, lambda_minus from the magic product.
  static TrtParams from_viscosity(double nu, double magic);
};

/// Macroscopic moments of one cell. The pressure is always cs^2 rho.
struct MacroState {
  double rho = 1.0;
  Vec3 u = Vec3::Zero();

  double pressure(const LatticeModel& model) const { return model.cs2 * rho; }
  Vec3 momentum(const TrtParams& params) const { return params.reference_density(rho) * u; }
};

/// Even equilibrium part e+_q(rho, u) = w_q/cs^2 (P + N_q).
double equilibrium_even(int q, double rho, const Vec3& u, const TrtParams& params, const LatticeModel& model);

/// Odd equilibrium part w_q/cs^2 rho0 c_q . v for an explicit velocity v (no force shift).
double equilibrium_odd(int q, double rho, const Vec3& v, const TrtParams& params, const LatticeModel& model);

/// Full equilibrium; the odd part uses the force-shifted velocity.
Populations equilibrium(const MacroState& state, const TrtParams& params, const LatticeModel& model);

/// Populations whose moments() are exactly (rho, u) and whose non-equilibrium part vanishes
/// in the force-free case. Used to initialise cells.
Populations equilibrium_for_moments(const MacroState& state, const TrtParams& params, const LatticeModel& model);

/// rho = sum f, rho0 U = sum c f, u = U + F / (2 rho0).
MacroState moments(const Populations& f, const TrtParams& params, const LatticeModel& model);

/// One TRT relaxation step. Validates the rates.
Populations collide(const Populations& f, const TrtParams& params, const LatticeModel& model);

/// Unchecked in-place kernel used by the solver sweep. Returns the pre-collision moments.
MacroState collide_cell(const double* f, double* out, const TrtParams& params, const LatticeModel& model);

double viscosity(const TrtParams& params);

/// Adjusts lambda_minus so that big_lambda_plus * big_lambda_minus == target.
void set_magic(TrtParams& params, double target);

}  // namespace fslbm
