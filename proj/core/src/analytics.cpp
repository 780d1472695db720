#include "fslbm/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fslbm {

double oracle_plate_transient(double z, double t, double h, double mu, double rho, double u_wall,
                              std::optional<int> k_max) {
  if (k_max && *k_max < 1) throw ParameterError("k_max must be at least 1");
  const double pi = std::numbers::pi;
  const double decay = pi * pi * mu * t / (4.0 * rho * h * h);
  const double cutoff = 1e-14;
  // Without decay the series only converges conditionally; use its closed-form limit.
  if (!k_max && !(decay > 0.0)) return z < h ? 0.0 : u_wall;
  double sum = 0.0;
  for (int k = 0;; ++k) {
    if (k_max && k > *k_max) break;
    const double m = 2.0 * k + 1.0;
    const double amplitude = 4.0 / (m * pi) * std::exp(-m * m * decay);
    const double term = (k % 2 == 0 ? 1.0 : -1.0) * amplitude * std::cos(m * pi * z / (2.0 * h));
    sum += term;
    // The amplitude bounds every later term once it is below the cutoff and decaying.
    if (!k_max && amplitude < cutoff) break;
  }
  return u_wall * (1.0 - sum);
}

double oracle_couette(double z, double /*h*/, double shear) { return shear * z; }

double oracle_film_parabola(double z, double h, double g, double nu) { return g / nu * (h * z - 0.5 * z * z); }

double oracle_poiseuille(double z, double h, double g, double nu) { return g / (2.0 * nu) * z * (h - z); }

namespace {

template <typename T, typename Diff, typename Mag>
ErrorNorms norms_impl(std::span<const T> field, std::span<const T> oracle, Diff diff, Mag mag) {
  if (field.size() != oracle.size()) throw ParameterError("error_norms: sample counts differ");
  double num = 0.0;
  double den = 0.0;
  double max_diff = 0.0;
  double max_ref = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double d = diff(field[i], oracle[i]);
    const double r = mag(oracle[i]);
    num += d * d;
    den += r * r;
    max_diff = std::max(max_diff, d);
    max_ref = std::max(max_ref, r);
  }
  ErrorNorms out;
  if (den == 0.0 || max_ref == 0.0) {
    out.absolute = true;
    out.l2 = field.empty() ? 0.0 : std::sqrt(num / static_cast<double>(field.size()));
    out.linf = max_diff;
    return out;
  }
  out.l2 = std::sqrt(num / den);
  out.linf = max_diff / max_ref;
  return out;
}

}  // namespace

ErrorNorms error_norms(std::span<const double> field, std::span<const double> oracle) {
  return norms_impl<double>(
      field, oracle, [](double a, double b) { return std::abs(a - b); }, [](double a) { return std::abs(a); });
}

ErrorNorms error_norms(std::span<const Vec3> field, std::span<const Vec3> oracle) {
  return norms_impl<Vec3>(
      field, oracle, [](const Vec3& a, const Vec3& b) { return (a - b).norm(); }, [](const Vec3& a) { return a.norm(); });
}

double plate_error(std::span<const double> field, std::span<const double> oracle, double h, double u_wall) {
  if (field.size() != oracle.size()) throw ParameterError("plate_error: sample counts differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double d = field[i] - oracle[i];
    sum += d * d;
  }
  return std::sqrt(sum / h) / u_wall;
}

OrderEstimate observed_order(std::span<const double> dx, std::span<const double> errors) {
  if (dx.size() != errors.size()) throw ParameterError("observed_order: dx and error counts differ");
  if (dx.size() < 3) throw ParameterError("observed_order needs at least three resolutions");
  for (std::size_t i = 0; i < dx.size(); ++i) {
    if (!(dx[i] > 0.0)) throw ParameterError("observed_order: dx must be positive");
    if (!(errors[i] > 0.0) || !std::isfinite(errors[i]) || !std::isfinite(std::log(errors[i]))) return {};
  }
  const double n = static_cast<double>(dx.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < dx.size(); ++i) {
    const double x = std::log(dx[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw ParameterError("observed_order: all dx are equal");
  return {(n * sxy - sx * sy) / denom};
}

}  // namespace fslbm
