#pragma once

#include <cmath>
#include <random>
#include <utility>

#include "elastic/geometry.hpp"

namespace support {

using elastic::kPi;
using elastic::UnitTangent;

struct AlphaBeta {
  double alpha;
  double beta;
};

// Uniform over the feasible canonical region 0 < alpha < pi, alpha - pi <= beta <= alpha,
// |beta| <= alpha, kept a little away from alpha = 0 and alpha = pi.
inline AlphaBeta random_feasible(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (;;) {
    const double alpha = 0.02 + (kPi - 0.04) * U(rng);
    const double beta = -alpha + 2.0 * alpha * U(rng);
    if (beta >= alpha - kPi && elastic::feasible(alpha, beta)) return {alpha, beta};
  }
}

inline std::pair<UnitTangent, UnitTangent> canonical_pair(double alpha, double beta) {
  return {UnitTangent::from_angle({0.0, 0.0}, alpha), UnitTangent::from_angle({1.0, 0.0}, beta)};
}

// End tangents of the unit elastica piece E on [-t, 0].
inline std::pair<UnitTangent, UnitTangent> elastica_piece_pair(double t) {
  namespace el = elastic::elastica;
  return {UnitTangent::make(el::point(-t), el::tangent(-t)), UnitTangent::make(el::point(0.0), el::tangent(0.0))};
}

inline elastic::Similarity random_rigid(std::mt19937_64& rng, bool with_scale) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  elastic::Similarity s;
  s.scale = with_scale ? std::exp(1.5 * U(rng)) : 1.0;
  s.rotation = kPi * U(rng);
  s.translation = {4.0 * U(rng), 4.0 * U(rng)};
  s.reflect = false;
  return s;
}

inline UnitTangent moved(const elastic::Similarity& s, const UnitTangent& u) {
  return UnitTangent::make(s(u.pos), s.linear(u.dir));
}

}  // namespace support
