#include "fslbm/collision.hpp"

#include <cmath>
#include <sstream>

namespace fslbm {

namespace {

bool rate_in_range(double lambda) { return lambda > -2.0 && lambda < 0.0; }

// N_q = 1/2 rho0 u_a u_b (c_a c_b / cs^2 - delta_ab)
double nonlinear_term(double cu, double usq, double rho0, double cs2) {
  return 0.5 * rho0 * (cu * cu / cs2 - usq);
}

}  // namespace

void TrtParams::validate() const {
  if (!rate_in_range(lambda_plus)) {
    std::ostringstream os;
    os << "lambda_plus out of (-2,0): " << lambda_plus;
    throw ParameterError(os.str());
  }
  if (!rate_in_range(lambda_minus)) {
    std::ostringstream os;
    os << "lambda_minus out of (-2,0): " << lambda_minus;
    throw ParameterError(os.str());
  }
}

TrtParams TrtParams::from_viscosity(double nu, double magic) {
  if (!(nu > 0.0)) throw ParameterError("viscosity must be positive");
  TrtParams p;
  p.lambda_plus = -1.0 / (3.0 * nu + 0.5);
  set_magic(p, magic);
  p.validate();
  return p;
}

double equilibrium_even(int q, double rho, const Vec3& u, const TrtParams& params, const LatticeModel& model) {
  const double cs2 = model.cs2;
  double pi = cs2 * rho;
  if (params.use_nonlinear) {
    const double cu = model.cx(q) * u[0] + model.cy(q) * u[1] + model.cz(q) * u[2];
    pi += nonlinear_term(cu, u.squaredNorm(), params.reference_density(rho), cs2);
  }
  return model.weights[q] / cs2 * pi;
}

double equilibrium_odd(int q, double rho, const Vec3& v, const TrtParams& params, const LatticeModel& model) {
  const double cv = model.cx(q) * v[0] + model.cy(q) * v[1] + model.cz(q) * v[2];
  return model.weights[q] / model.cs2 * params.reference_density(rho) * cv;
}

Populations equilibrium(const MacroState& state, const TrtParams& params, const LatticeModel& model) {
  const double rho0 = params.reference_density(state.rho);
  const Vec3 u_eq = state.u + params.big_lambda_minus() * params.force / rho0;
  Populations e;
  for (int q = 0; q < kQ; ++q) {
    e[q] = equilibrium_even(q, state.rho, state.u, params, model) +
           equilibrium_odd(q, state.rho, u_eq, params, model);
  }
  return e;
}

Populations equilibrium_for_moments(const MacroState& state, const TrtParams& params, const LatticeModel& model) {
  const double rho0 = params.reference_density(state.rho);
  const Vec3 big_u = state.u - 0.5 * params.force / rho0;
  Populations e;
  for (int q = 0; q < kQ; ++q) {
    e[q] = equilibrium_even(q, state.rho, state.u, params, model) +
           equilibrium_odd(q, state.rho, big_u, params, model);
  }
  return e;
}

MacroState moments(const Populations& f, const TrtParams& params, const LatticeModel& model) {
  double rho = 0.0;
  Vec3 j = Vec3::Zero();
  for (int q = 0; q < kQ; ++q) {
    rho += f[q];
    j[0] += model.cx(q) * f[q];
    j[1] += model.cy(q) * f[q];
    j[2] += model.cz(q) * f[q];
  }
  const double rho0 = params.reference_density(rho);
  return {rho, (j + 0.5 * params.force) / rho0};
}

MacroState collide_cell(const double* f, double* out, const TrtParams& params, const LatticeModel& model) {
  Populations fl;
  for (int q = 0; q < kQ; ++q) fl[q] = f[q];
  const MacroState state = moments(fl, params, model);
  const double rho0 = params.reference_density(state.rho);
  const Vec3 u_eq = state.u + params.big_lambda_minus() * params.force / rho0;
  const double usq = state.u.squaredNorm();
  const double cs2 = model.cs2;
  const double p = cs2 * state.rho;

  // Rest population is purely even.
  {
    double pi = p;
    if (params.use_nonlinear) pi += nonlinear_term(0.0, usq, rho0, cs2);
    const double e0 = model.weights[0] / cs2 * pi;
    out[0] = fl[0] + params.lambda_plus * (fl[0] - e0);
  }
  for (int q = 1; q < kQ; q += 2) {
    const int qb = q + 1;
    const double w = model.weights[q] / cs2;
    const double cu = model.cx(q) * state.u[0] + model.cy(q) * state.u[1] + model.cz(q) * state.u[2];
    const double cueq = model.cx(q) * u_eq[0] + model.cy(q) * u_eq[1] + model.cz(q) * u_eq[2];
    double pi = p;
    if (params.use_nonlinear) pi += nonlinear_term(cu, usq, rho0, cs2);
    const double ep = w * pi;
    const double em = w * rho0 * cueq;
    const double fp = 0.5 * (fl[q] + fl[qb]);
    const double fm = 0.5 * (fl[q] - fl[qb]);
    const double np = fp - ep;
    const double nm = fm - em;
    out[q] = fl[q] + params.lambda_plus * np + params.lambda_minus * nm;
    out[qb] = fl[qb] + params.lambda_plus * np - params.lambda_minus * nm;
  }
  return state;
}

Populations collide(const Populations& f, const TrtParams& params, const LatticeModel& model) {
  params.validate();
  Populations out;
  collide_cell(f.data(), out.data(), params, model);
  return out;
}

double viscosity(const TrtParams& params) { return -(1.0 / 3.0) * (1.0 / params.lambda_plus + 0.5); }

void set_magic(TrtParams& params, double target) {
  if (!(target > 0.0)) throw ParameterError("magic parameter must be positive");
  const double lp = params.big_lambda_plus();
  if (!(lp > 0.0)) throw ParameterError("lambda_plus out of (-2,0)");
  const double lm = target / lp;
  const double lambda_minus = -1.0 / (lm + 0.5);
  if (!rate_in_range(lambda_minus)) {
    std::ostringstream os;
    os << "magic parameter " << target << " gives lambda_minus out of (-2,0): " << lambda_minus;
    throw ParameterError(os.str());
  }
  params.lambda_minus = lambda_minus;
}

}  // namespace fslbm
