#pragma once

// Rectangular elastica in the model parameterization
//
//   E(t) = (sin t, xi(t)),   xi'(t) = sin^2 t / sqrt(1 + sin^2 t),   xi(0) = 0.
//
// xi is odd and quasi-periodic, xi(t + pi) = d + xi(t) with d = xi(pi). The
// curve has speed 1/sqrt(1 + sin^2 t), signed curvature 2 sin t and unit
// tangent (cos t sqrt(1 + sin^2 t), sin^2 t), so its direction angle always
// lies in [0, pi].

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "elastic/config.hpp"
#include "elastic/errors.hpp"
#include "elastic/quadrature.hpp"
#include "elastic/vec2.hpp"

namespace elastic::elastica {

namespace detail {

inline void require_finite(double t, const char* op) {
  if (!std::isfinite(t)) throw DomainError(std::string(op) + ": non-finite parameter");
}

inline double xi_integrand(double t) {
  const double s2 = std::sin(t) * std::sin(t);
  return s2 / std::sqrt(1.0 + s2);
}

// xi on [0, pi] by direct quadrature.
inline double xi_base(double r) {
  return quad::integrate(xi_integrand, 0.0, r, tolerances().xi_abs);
}

// After tau = s^2 the integrand of 1/2 int sqrt(sin tau) d tau becomes
// s sqrt(sin s^2), which is analytic on [0, sqrt(pi)).
inline double substituted_integrand(double s) { return s * std::sqrt(std::sin(s * s)); }

inline double substituted_integral(double s) {
  return quad::integrate(substituted_integrand, 0.0, s, tolerances().half_sqrt_sin_abs);
}

inline double turning_potential(double t) { return 2.0 * std::acos(std::cos(t) / std::numbers::sqrt2); }

}  // namespace detail

/// d = xi(pi): the rise of E per half period and the bending energy of E on [0, pi].
inline double d() {
  static const double value = quad::integrate(detail::xi_integrand, 0.0, kPi, 1e-15);
  return value;
}

inline double xi(double t) {
  detail::require_finite(t, "xi");
  if (t < 0.0) return -xi(-t);
  const double periods = std::floor(t / kPi);
  const double r = t - periods * kPi;
  // Integrate over at most [0, pi/2] using xi(pi - r) = d - xi(r).
  const double base = r <= 0.5 * kPi ? detail::xi_base(r) : d() - detail::xi_base(kPi - r);
  return periods * d() + base;
}

inline Vec2 point(double t) {
  detail::require_finite(t, "point");
  return {std::sin(t), xi(t)};
}

inline double speed(double t) {
  detail::require_finite(t, "speed");
  const double s = std::sin(t);
  return 1.0 / std::sqrt(1.0 + s * s);
}

inline double curvature(double t) {
  detail::require_finite(t, "curvature");
  return 2.0 * std::sin(t);
}

/// Unit tangent of E at t.
inline Vec2 tangent(double t) {
  detail::require_finite(t, "tangent");
  const double s = std::sin(t);
  return {std::cos(t) * std::sqrt(1.0 + s * s), s * s};
}

/// Direction angle of E at t, in [0, pi].
inline double direction_angle(double t) {
  detail::require_finite(t, "direction_angle");
  return detail::turning_potential(t) - 0.5 * kPi;
}

/// Signed turning angle of E over [a, b].
inline double turning(double a, double b) {
  detail::require_finite(a, "turning");
  detail::require_finite(b, "turning");
  return detail::turning_potential(b) - detail::turning_potential(a);
}

/// Inverse of delta -> turning(0, t) on [0, pi].
inline double param_from_turning(double delta) {
  if (!(delta >= 0.0 && delta <= kPi)) throw DomainError("param_from_turning: delta outside [0, pi]");
  // t = acos(sqrt2 cos(delta/2 + pi/4)), with 1 -+ cos t formed without
  // cancellation so that t stays accurate near both ends.
  const double e = kPi - delta;
  const double one_minus = 2.0 * std::pow(std::sin(0.25 * delta), 2) + std::sin(0.5 * delta);
  const double one_plus = 2.0 * std::pow(std::sin(0.25 * e), 2) + std::sin(0.5 * e);
  return 2.0 * std::atan2(std::sqrt(std::max(one_minus, 0.0)), std::sqrt(std::max(one_plus, 0.0)));
}

/// Bending energy of E restricted to [a, b].
inline double segment_energy(double a, double b) {
  detail::require_finite(a, "segment_energy");
  detail::require_finite(b, "segment_energy");
  if (a > b) throw DomainError("segment_energy: a > b");
  return xi(b) - xi(a);
}

/// 1/2 int_0^delta sqrt(sin tau) d tau. Both endpoint singularities are removed
/// by tau = s^2 (near 0) and tau = pi - s^2 (near pi).
inline double half_sqrt_sin_integral(double delta) {
  if (!(delta >= 0.0 && delta <= kPi)) throw DomainError("half_sqrt_sin_integral: delta outside [0, pi]");
  const double mid = std::sqrt(0.5 * kPi);
  if (delta <= 0.5 * kPi) return detail::substituted_integral(std::sqrt(delta));
  return 2.0 * detail::substituted_integral(mid) - detail::substituted_integral(std::sqrt(kPi - delta));
}

/// Model arclength of E over [a, b] (a <= b).
inline double arclength(double a, double b) {
  detail::require_finite(a, "arclength");
  detail::require_finite(b, "arclength");
  if (a > b) throw DomainError("arclength: a > b");
  return quad::integrate([](double t) { return speed(t); }, a, b, 1e-14 * std::max(1.0, b - a));
}

struct ChordAngles {
  double psi;    // between the chord [0, E(t)] and the tangent at E(0)
  double theta;  // between the chord and the tangent at E(t)
};

inline ChordAngles chord_angles(double t) {
  detail::require_finite(t, "chord_angles");
  if (!(t > 0.0 && t <= kPi)) throw DomainError("chord_angles: t outside (0, pi]");
  if (t < tolerances().chord_min_param) throw DomainError("chord_angles: degenerate chord");
  const double chord = std::atan2(xi(t), std::sin(t));
  return {chord, direction_angle(t) - chord};
}

/// Orthogonal distance from the origin to the tangent line of E at E(t).
inline double tangent_line_distance(double t) {
  detail::require_finite(t, "tangent_line_distance");
  if (!(t >= 0.0 && t <= kPi)) throw DomainError("tangent_line_distance: t outside [0, pi]");
  const double s = std::sin(t);
  return s * s * s - xi(t) * std::cos(t) * std::sqrt(1.0 + s * s);
}

/// Tabulated evaluator for half_sqrt_sin_integral used on hot paths.
///
/// Stores K(s) = int_0^s r sqrt(sin r^2) dr at nodes on [0, sqrt(pi/2)] (each
/// node by direct adaptive quadrature) and integrates the remaining partial
/// cell with a 3-point Gauss rule. Agrees with the direct route to ~1e-15.
class HalfSqrtSinTable {
 public:
  static const HalfSqrtSinTable& instance() {
    static const HalfSqrtSinTable table;
    return table;
  }

  double operator()(double delta) const {
    if (!(delta >= 0.0 && delta <= kPi)) throw DomainError("half_sqrt_sin_integral: delta outside [0, pi]");
    if (delta <= 0.5 * kPi) return k(std::sqrt(delta));
    return total_ - k(std::sqrt(kPi - delta));
  }

 private:
  static constexpr int kCells = 4096;

  HalfSqrtSinTable() : step_(std::sqrt(0.5 * kPi) / kCells), nodes_(kCells + 1) {
    for (int i = 0; i <= kCells; ++i) nodes_[i] = detail::substituted_integral(i * step_);
    total_ = 2.0 * nodes_[kCells];
  }

  double k(double s) const {
    int cell = static_cast<int>(s / step_);
    if (cell >= kCells) cell = kCells - 1;
    const double left = cell * step_;
    const double half = 0.5 * (s - left);
    const double center = left + half;
    const double dx = half * 0.7745966692414834;  // sqrt(3/5)
    const double sum = 5.0 * (detail::substituted_integrand(center - dx) + detail::substituted_integrand(center + dx)) +
                       8.0 * detail::substituted_integrand(center);
    return nodes_[cell] + sum * half / 9.0;
  }

  double step_;
  double total_ = 0.0;
  std::vector<double> nodes_;
};

}  // namespace elastic::elastica
