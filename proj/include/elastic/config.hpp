#pragma once

#include <numbers>

namespace elastic {

inline constexpr double kPi = std::numbers::pi;

// All numeric tolerances used across the library live here.
struct Tolerances {
  // quadrature
  double xi_abs = 1e-13;
  double half_sqrt_sin_abs = 1e-14;
  double arclength_rel = 1e-12;

  // geometry
  double unit_dir = 1e-12;
  double g1_position_rel = 1e-9;
  double g1_direction = 1e-9;
  double min_line_length = 1e-12;

  // elastica
  double chord_min_param = 1e-9;

  // s-curve solver
  double trivial_alpha = 1e-9;
  double u_turn_boundary = 1e-12;   // |beta - (alpha - pi)| treated as case (a)
  double sigma_boundary = 1e-10;    // |sigma(beta)| treated as the (b)/(c) bridge
  double sigma_root = 1e-10;
  double open_end_margin = 1e-9;    // scan stops this far short of gamma = 0
  double sigma_consistency = 1e-8;
  double bisection_param = 1e-14;
  double case_c_t2_clamp = 1e-8;
  double canonical_slack = 1e-12;
  int gamma_scan_points = 512;

  // spline
  double fit_tol = 1e-8;
  int fit_max_iters = 200;
  int fit_restarts = 4;
};

inline const Tolerances& tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace elastic
