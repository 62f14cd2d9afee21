#pragma once

#include <array>
#include <cmath>
#include <utility>

namespace elastic::quad {

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double kronrod;
  double error;
};

template <typename F>
Panel gk15_panel(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

template <typename F>
double adaptive(F& f, double a, double b, double tol, Panel whole, int depth) {
  if (whole.error <= tol || depth <= 0 || std::abs(b - a) < 1e-15) return whole.kronrod;
  const double mid = 0.5 * (a + b);
  const Panel left = gk15_panel(f, a, mid);
  const Panel right = gk15_panel(f, mid, b);
  if (left.error + right.error <= tol) return left.kronrod + right.kronrod;
  return adaptive(f, a, mid, 0.5 * tol, left, depth - 1) +
         adaptive(f, mid, b, 0.5 * tol, right, depth - 1);
}

}  // namespace detail

/// Adaptive Gauss–Kronrod (7/15) integration of f over [a, b] to an absolute
/// error target. Intended for smooth integrands; algebraic endpoint
/// singularities should be removed by substitution before calling.
template <typename F>
double integrate(F&& f, double a, double b, double abs_tol, int max_depth = 40) {
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, abs_tol, max_depth);
  auto whole = detail::gk15_panel(f, a, b);
  return detail::adaptive(f, a, b, abs_tol, whole, max_depth);
}

/// Fixed 7-point Gauss–Legendre rule over [a, b].
template <typename F>
double gauss7(F&& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = detail::kGaussWeights[3] * f(center);
  for (int j = 0; j < 3; ++j) {
    const double dx = half * detail::kKronrodNodes[2 * j + 1];
    sum += detail::kGaussWeights[j] * (f(center - dx) + f(center + dx));
  }
  return sum * half;
}

}  // namespace elastic::quad
