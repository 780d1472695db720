#include "fslbm/boundary.hpp"

#include <algorithm>
#include <cmath>

namespace fslbm {

namespace {

double stress_contraction(int q, const Mat3& S, const LatticeModel& model) {
  const Vec3 c = model.c(q);
  return c.dot(S * c);
}

}  // namespace

ClosureCoefficients fsk_coefficients(int q, const TrtParams& params, const LatticeModel& model, bool simplified) {
  ClosureCoefficients k;
  k.a0 = -1.0;
  k.abar0 = 0.0;
  k.a1 = 0.0;
  k.alpha_plus = 2.0;
  k.C = 0.0;
  k.D = simplified ? 0.0 : -2.0 * params.big_lambda_plus() * model.weights[q] / model.cs2;
  k.delta = 0.5;
  return k;
}

ClosureCoefficients fsl_coefficients(int q, double delta, const TrtParams& params, const LatticeModel& model,
                                     bool simplified) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw ParameterError("link cut fraction outside [0,1]");
  const double lp = params.lambda_plus;
  ClosureCoefficients k;
  k.a0 = 0.5 - delta;
  k.abar0 = 0.5;
  k.a1 = delta - 1.0;
  k.alpha_plus = 1.0;
  k.C = lp * (0.5 + delta) - 2.0 * lp;
  k.D = simplified ? 0.0 : -params.big_lambda_plus() * model.weights[q] / model.cs2;
  k.delta = delta;
  return k;
}

double even_nonequilibrium(CellIndex cell, int q, const LinkFields& fields, const TrtParams& params,
                           const LatticeModel& model) {
  const double* f = fields.pre.data() + cell * kQ;
  const double f_even = 0.5 * (f[q] + f[model.opposite[q]]);
  return f_even - equilibrium_even(q, fields.rho[cell], fields.u[cell], params, model);
}

std::optional<double> apply_closure(const ClosureCoefficients& k, const LinkCut& cut, const LinkFields& fields,
                                    const BoundaryValue& bval, const TrtParams& params, const LatticeModel& model) {
  const int q = cut.q;
  const int qb = model.opposite[q];
  const double* post = fields.post.data();
  const CellIndex xb = cut.cell;

  double value = k.a0 * post[xb * kQ + q] + k.abar0 * post[xb * kQ + qb];
  if (k.a1 != 0.0) {
    const CellIndex behind = fields.grid.neighbor(xb, qb);
    if (behind == kNoCell || !is_active(fields.flags[behind])) return std::nullopt;
    value += k.a1 * post[behind * kQ + q];
  }
  if (k.C != 0.0) value += k.C * even_nonequilibrium(xb, q, fields, params, model);
  value += k.alpha_plus * equilibrium_even(q, bval.rho_b, bval.u_b, params, model);
  if (k.D != 0.0) value += k.D * stress_contraction(q, bval.S_b, model);
  return value;
}

double bounce_back(const LinkCut& cut, const LinkFields& fields, const TrtParams& params, const LatticeModel& model,
                   const Vec3& u_wall) {
  double value = fields.post[cut.cell * kQ + cut.q];
  if (u_wall.squaredNorm() > 0.0) {
    value -= 2.0 * equilibrium_odd(cut.q, fields.rho[cut.cell], u_wall, params, model);
  }
  return value;
}

double cli_wall(const LinkCut& cut, const LinkFields& fields, const TrtParams& params, const LatticeModel& model,
                const Vec3& u_wall) {
  const int q = cut.q;
  const int qb = model.opposite[q];
  const double delta = cut.delta;
  const double k = (1.0 - 2.0 * delta) / (1.0 + 2.0 * delta);
  if (k == 0.0) return bounce_back(cut, fields, params, model, u_wall);

  const CellIndex xb = cut.cell;
  const CellIndex behind = fields.grid.neighbor(xb, qb);
  if (behind == kNoCell || !is_active(fields.flags[behind])) return bounce_back(cut, fields, params, model, u_wall);

  const double* post = fields.post.data();
  double value = post[xb * kQ + q] + k * (post[behind * kQ + q] - post[xb * kQ + qb]);
  if (u_wall.squaredNorm() > 0.0) {
    const double alpha_minus = -4.0 / (1.0 + 2.0 * delta);
    value += alpha_minus * equilibrium_odd(q, fields.rho[xb], u_wall, params, model);
  }
  return value;
}

Vec3 link_velocity(const LinkCut& cut, const LinkFields& fields, const LatticeModel& model) {
  const Vec3& ub = fields.u[cut.cell];
  const CellIndex behind = fields.grid.neighbor(cut.cell, model.opposite[cut.q]);
  if (behind == kNoCell || !is_active(fields.flags[behind])) return ub;
  return ub + cut.delta * (ub - fields.u[behind]);
}

Mat3 local_frame(const Vec3& n) {
  int axis = 0;
  for (int a = 1; a < 3; ++a) {
    if (std::abs(n[a]) < std::abs(n[axis])) axis = a;
  }
  const Vec3 e = Vec3::Unit(axis);
  const Vec3 t1 = e.cross(n).normalized();
  const Vec3 t2 = n.cross(t1);
  Mat3 frame;
  frame.col(0) = t1;
  frame.col(1) = t2;
  frame.col(2) = n;
  return frame;
}

Mat3 project_stress(const Mat3& S, const Vec3& n, const StressTargets& targets) {
  const double norm = n.norm();
  if (!(norm > 0.0)) throw ParameterError("project_stress: zero interface normal");
  const Mat3 l = local_frame(n / norm);
  Mat3 local = l.transpose() * S * l;
  if (targets.tangential_normal) {
    local(0, 2) = local(2, 0) = *targets.tangential_normal;
    local(1, 2) = local(2, 1) = *targets.tangential_normal;
  }
  if (targets.normal_normal) local(2, 2) = *targets.normal_normal;
  return l * local * l.transpose();
}

std::optional<Vec3> interface_normal(CellIndex cell, const Grid& grid, std::span<const CellFlag> flags,
                                     std::span<const double> fill) {
  // Wall or out-of-domain neighbours mirror the centre value (zero gradient).
  auto phi = [&](int q) {
    const CellIndex nb = grid.neighbor(cell, q);
    if (nb == kNoCell || flags[nb] == CellFlag::Wall) return fill[cell];
    return fill[nb];
  };
  const Vec3 grad{0.5 * (phi(1) - phi(2)), 0.5 * (phi(3) - phi(4)), 0.5 * (phi(5) - phi(6))};
  const double norm = grad.norm();
  if (norm < 1e-12) return std::nullopt;
  return Vec3(-grad / norm);
}

Mat3 shear_rate(CellIndex cell, const LinkFields& fields, std::span<const double> fill, const TrtParams& params) {
  auto momentum = [&](CellIndex c) -> Vec3 { return params.reference_density(fields.rho[c]) * fields.u[c]; };
  auto usable = [&](CellIndex c) { return c != kNoCell && is_active(fields.flags[c]); };

  const Vec3 j0 = momentum(cell);
  Mat3 grad = Mat3::Zero();  // grad(a, b) = d_a j_b
  for (int a = 0; a < 3; ++a) {
    const CellIndex plus = fields.grid.neighbor(cell, 1 + 2 * a);
    const CellIndex minus = fields.grid.neighbor(cell, 2 + 2 * a);
    const bool has_plus = usable(plus);
    const bool has_minus = usable(minus);
    Vec3 d = Vec3::Zero();
    if (has_plus && has_minus) {
      if (fill[plus] > fill[minus]) {
        d = momentum(plus) - j0;
      } else if (fill[minus] > fill[plus]) {
        d = j0 - momentum(minus);
      } else {
        d = 0.5 * (momentum(plus) - momentum(minus));
      }
    } else if (has_plus) {
      d = momentum(plus) - j0;
    } else if (has_minus) {
      d = j0 - momentum(minus);
    }
    grad.row(a) = d.transpose();
  }
  return 0.5 * (grad + grad.transpose());
}

Mat3 local_shear_rate(CellIndex cell, const LinkFields& fields, const TrtParams& params, const LatticeModel& model) {
  // Sum_q c c n+ = (cs^2 / lambda_plus) (2 S + I tr S) to first order.
  const Populations f = load(fields.pre, cell);
  Mat3 m = Mat3::Zero();
  for (int q = 0; q < kQ; ++q) {
    const double n_plus = 0.5 * (f[q] + f[model.opposite[q]]) -
                          equilibrium_even(q, fields.rho[cell], fields.u[cell], params, model);
    const Vec3 c = model.c(q);
    m += n_plus * c * c.transpose();
  }
  m *= params.lambda_plus / model.cs2;
  return 0.5 * (m - Mat3::Identity() * (m.trace() / 5.0));
}

double delta_from_fill(const LinkCut& cut, const Grid& grid, std::span<const double> fill) {
  const double phi_b = fill[cut.cell];
  const CellIndex out = grid.neighbor(cut.cell, cut.q);
  const double phi_out = out == kNoCell ? 0.0 : fill[out];
  if (phi_b <= 0.5 || phi_b <= phi_out) return 0.0;
  return std::clamp((phi_b - 0.5) / (phi_b - phi_out), 0.0, 1.0);
}

BoundaryValue extrapolate_boundary_values(const LinkCut& cut, const LinkFields& fields, std::span<const double> fill,
                                          const TrtParams& params, double rho_gas) {
  BoundaryValue bval;
  bval.rho_b = rho_gas;
  bval.u_b = fields.u[cut.cell];
  const auto normal = interface_normal(cut.cell, fields.grid, fields.flags, fill);
  if (normal) bval.S_b = project_stress(local_shear_rate(cut.cell, fields, params), *normal);
  return bval;
}

}  // namespace fslbm
