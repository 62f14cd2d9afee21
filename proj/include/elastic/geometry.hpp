#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "elastic/config.hpp"
#include "elastic/elastica.hpp"
#include "elastic/errors.hpp"
#include "elastic/vec2.hpp"

namespace elastic {

/// Position plus unit direction. The direction is normalized on construction.
struct UnitTangent {
  Vec2 pos;
  Vec2 dir{1.0, 0.0};

  static UnitTangent make(Vec2 pos, Vec2 dir) {
    if (!std::isfinite(pos.x) || !std::isfinite(pos.y) || !std::isfinite(dir.x) || !std::isfinite(dir.y)) {
      throw DomainError("unit tangent: non-finite component");
    }
    const double n = norm(dir);
    if (!(n > 0.0)) throw DomainError("unit tangent: zero direction");
    return {pos, dir / n};
  }

  static UnitTangent from_angle(Vec2 pos, double angle) { return make(pos, elastic::from_angle(angle)); }

  UnitTangent reversed() const { return {pos, -dir}; }
};

/// z -> scale * e^{i rotation} * (reflect ? conj(z) : z) + translation.
struct Similarity {
  double scale = 1.0;
  double rotation = 0.0;
  Vec2 translation;
  bool reflect = false;

  Vec2 linear(Vec2 z) const {
    return scale * rotate(reflect ? conj(z) : z, rotation);
  }
  Vec2 operator()(Vec2 z) const { return linear(z) + translation; }

  Similarity inverse() const {
    // z = (1/s) C^r R(-rot) (w - t); C R(-rot) = R(rot) C.
    Similarity inv;
    inv.scale = 1.0 / scale;
    inv.reflect = reflect;
    inv.rotation = reflect ? rotation : -rotation;
    inv.translation = -inv.linear(translation);
    return inv;
  }

  /// (*this) o inner.
  Similarity compose(const Similarity& inner) const {
    Similarity out;
    out.scale = scale * inner.scale;
    out.rotation = reflect ? rotation - inner.rotation : rotation + inner.rotation;
    out.reflect = reflect != inner.reflect;
    out.translation = linear(inner.translation) + translation;
    return out;
  }

  static Similarity identity() { return {}; }

  static Similarity translate(Vec2 t) { return {1.0, 0.0, t, false}; }

  /// The orientation-preserving similarity taking a0 to b0 and a1 to b1.
  static Similarity two_point(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    const Vec2 c = cdiv(b1 - b0, a1 - a0);
    Similarity s;
    s.scale = norm(c);
    s.rotation = angle_of(c);
    s.translation = b0 - cmul(c, a0);
    return s;
  }
};

struct LineSegment {
  Vec2 a;
  Vec2 b;
};

/// map o E restricted to [t0, t1], traversed backwards when `reversed`.
struct ElasticaArc {
  Similarity map;
  double t0 = 0.0;
  double t1 = 0.0;
  bool reversed = false;
};

using CurveSegment = std::variant<LineSegment, ElasticaArc>;

struct PiecewiseCurve {
  std::vector<CurveSegment> segments;
};

// ----------------------------------------------------------------------------
// Per-segment functionals
// ----------------------------------------------------------------------------

inline void validate(const CurveSegment& seg) {
  if (const auto* line = std::get_if<LineSegment>(&seg)) {
    if (!(norm(line->b - line->a) > 0.0)) throw DomainError("line segment of zero length");
    return;
  }
  const auto& arc = std::get<ElasticaArc>(seg);
  if (!std::isfinite(arc.t0) || !std::isfinite(arc.t1) || !(arc.t0 < arc.t1)) {
    throw DomainError("elastica arc requires t0 < t1");
  }
  if (arc.t1 - arc.t0 > 2.0 * kPi + 1e-12) throw DomainError("elastica arc spans more than 2 pi");
  if (!(arc.map.scale > 0.0) || !std::isfinite(arc.map.scale)) throw DomainError("similarity scale must be positive");
}

inline UnitTangent start_tangent(const CurveSegment& seg) {
  if (const auto* line = std::get_if<LineSegment>(&seg)) return UnitTangent::make(line->a, line->b - line->a);
  const auto& arc = std::get<ElasticaArc>(seg);
  const double t = arc.reversed ? arc.t1 : arc.t0;
  const Vec2 dir = arc.map.linear(elastica::tangent(t));
  return UnitTangent::make(arc.map(elastica::point(t)), arc.reversed ? -dir : dir);
}

inline UnitTangent end_tangent(const CurveSegment& seg) {
  if (const auto* line = std::get_if<LineSegment>(&seg)) return UnitTangent::make(line->b, line->b - line->a);
  const auto& arc = std::get<ElasticaArc>(seg);
  const double t = arc.reversed ? arc.t0 : arc.t1;
  const Vec2 dir = arc.map.linear(elastica::tangent(t));
  return UnitTangent::make(arc.map(elastica::point(t)), arc.reversed ? -dir : dir);
}

inline double energy(const CurveSegment& seg) {
  if (std::holds_alternative<LineSegment>(seg)) return 0.0;
  const auto& arc = std::get<ElasticaArc>(seg);
  return elastica::segment_energy(arc.t0, arc.t1) / arc.map.scale;
}

inline double length(const CurveSegment& seg) {
  if (const auto* line = std::get_if<LineSegment>(&seg)) return norm(line->b - line->a);
  const auto& arc = std::get<ElasticaArc>(seg);
  return arc.map.scale * elastica::arclength(arc.t0, arc.t1);
}

inline double turning(const CurveSegment& seg) {
  if (std::holds_alternative<LineSegment>(seg)) return 0.0;
  const auto& arc = std::get<ElasticaArc>(seg);
  const double base = elastica::turning(arc.t0, arc.t1);
  return (arc.map.reflect != arc.reversed) ? -base : base;
}

/// Signed world curvature of an arc at model parameter t.
inline double arc_curvature(const ElasticaArc& arc, double t) {
  const double k = elastica::curvature(t) / arc.map.scale;
  return (arc.map.reflect != arc.reversed) ? -k : k;
}

inline CurveSegment transformed(const Similarity& T, const CurveSegment& seg) {
  if (const auto* line = std::get_if<LineSegment>(&seg)) return LineSegment{T(line->a), T(line->b)};
  auto arc = std::get<ElasticaArc>(seg);
  arc.map = T.compose(arc.map);
  return arc;
}

inline CurveSegment reversed(const CurveSegment& seg) {
  if (const auto* line = std::get_if<LineSegment>(&seg)) return LineSegment{line->b, line->a};
  auto arc = std::get<ElasticaArc>(seg);
  arc.reversed = !arc.reversed;
  return arc;
}

// ----------------------------------------------------------------------------
// Whole-curve functionals
// ----------------------------------------------------------------------------

inline void validate(const PiecewiseCurve& c) {
  if (c.segments.empty()) throw DomainError("curve has no segments");
  for (const auto& s : c.segments) validate(s);
}

inline PiecewiseCurve apply(const Similarity& T, const PiecewiseCurve& c) {
  PiecewiseCurve out;
  out.segments.reserve(c.segments.size());
  for (const auto& s : c.segments) out.segments.push_back(transformed(T, s));
  return out;
}

/// The same point set traversed end to start.
inline PiecewiseCurve reversed(const PiecewiseCurve& c) {
  PiecewiseCurve out;
  out.segments.reserve(c.segments.size());
  for (auto it = c.segments.rbegin(); it != c.segments.rend(); ++it) out.segments.push_back(reversed(*it));
  return out;
}

inline PiecewiseCurve concat(PiecewiseCurve a, const PiecewiseCurve& b) {
  a.segments.insert(a.segments.end(), b.segments.begin(), b.segments.end());
  return a;
}

inline double energy(const PiecewiseCurve& c) {
  double e = 0.0;
  for (const auto& s : c.segments) e += energy(s);
  return e;
}

inline double length(const PiecewiseCurve& c) {
  double l = 0.0;
  for (const auto& s : c.segments) l += length(s);
  return l;
}

inline double turning(const PiecewiseCurve& c) {
  double t = 0.0;
  for (const auto& s : c.segments) t += turning(s);
  return t;
}

inline UnitTangent start_tangent(const PiecewiseCurve& c) {
  if (c.segments.empty()) throw DomainError("curve has no segments");
  return start_tangent(c.segments.front());
}

inline UnitTangent end_tangent(const PiecewiseCurve& c) {
  if (c.segments.empty()) throw DomainError("curve has no segments");
  return end_tangent(c.segments.back());
}

struct ContinuityReport {
  double max_position_gap = 0.0;  // relative to curve length
  double max_direction_gap = 0.0;
  bool ok = true;
};

/// Checks that consecutive segments share endpoints and directions.
inline ContinuityReport check_g1(const PiecewiseCurve& c,
                                 double position_tol = tolerances().g1_position_rel,
                                 double direction_tol = tolerances().g1_direction) {
  ContinuityReport r;
  const double scale = std::max(length(c), 1e-300);
  for (std::size_t k = 0; k + 1 < c.segments.size(); ++k) {
    const auto e = end_tangent(c.segments[k]);
    const auto s = start_tangent(c.segments[k + 1]);
    r.max_position_gap = std::max(r.max_position_gap, norm(e.pos - s.pos) / scale);
    r.max_direction_gap = std::max(r.max_direction_gap, norm(e.dir - s.dir));
  }
  r.ok = r.max_position_gap <= position_tol && r.max_direction_gap <= direction_tol;
  return r;
}

// ----------------------------------------------------------------------------
// Arclength sampling
// ----------------------------------------------------------------------------

namespace detail {

// Model parameter reached after travelling model arclength m along the arc
// from its traversal start.
inline double arc_param_at(const ElasticaArc& arc, double m) {
  const double total = elastica::arclength(arc.t0, arc.t1);
  m = std::clamp(m, 0.0, total);
  if (arc.reversed) m = total - m;
  double lo = arc.t0;
  double hi = arc.t1;
  double t = arc.t0 + (arc.t1 - arc.t0) * (m / total);
  for (int it = 0; it < 60; ++it) {
    const double f = elastica::arclength(arc.t0, t) - m;
    if (f > 0.0) hi = t; else lo = t;
    const double step = f / elastica::speed(t);
    double next = t - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) < 1e-15) { t = next; break; }
    t = next;
  }
  return t;
}

struct Cursor {
  std::size_t segment;
  double local;  // arclength into the segment
};

template <typename Visit>
void walk_arclength(const PiecewiseCurve& c, std::size_t n, Visit&& visit) {
  if (n < 2) throw DomainError("sample: need at least two points");
  validate(c);
  std::vector<double> lengths;
  lengths.reserve(c.segments.size());
  double total = 0.0;
  for (const auto& s : c.segments) {
    lengths.push_back(length(s));
    total += lengths.back();
  }
  std::size_t seg = 0;
  double before = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(n - 1);
    while (seg + 1 < c.segments.size() && target > before + lengths[seg]) {
      before += lengths[seg];
      ++seg;
    }
    visit(k, Cursor{seg, std::clamp(target - before, 0.0, lengths[seg])});
  }
}

}  // namespace detail

/// n points at equal arclength spacing; the first and last are the curve's endpoints.
inline std::vector<Vec2> sample(const PiecewiseCurve& c, std::size_t n) {
  std::vector<Vec2> out(n);
  detail::walk_arclength(c, n, [&](std::size_t k, detail::Cursor cur) {
    const auto& seg = c.segments[cur.segment];
    if (const auto* line = std::get_if<LineSegment>(&seg)) {
      const double len = norm(line->b - line->a);
      out[k] = line->a + (cur.local / len) * (line->b - line->a);
    } else {
      const auto& arc = std::get<ElasticaArc>(seg);
      out[k] = arc.map(elastica::point(detail::arc_param_at(arc, cur.local / arc.map.scale)));
    }
  });
  out.front() = start_tangent(c).pos;
  out.back() = end_tangent(c).pos;
  return out;
}

/// Signed curvature at n equally spaced arclength positions.
inline std::vector<double> sample_curvature(const PiecewiseCurve& c, std::size_t n) {
  std::vector<double> out(n, 0.0);
  detail::walk_arclength(c, n, [&](std::size_t k, detail::Cursor cur) {
    const auto& seg = c.segments[cur.segment];
    if (const auto* arc = std::get_if<ElasticaArc>(&seg)) {
      out[k] = arc_curvature(*arc, detail::arc_param_at(*arc, cur.local / arc->map.scale));
    }
  });
  return out;
}

/// Number of sign changes, ignoring values with |k| <= eps.
inline int sign_changes(const std::vector<double>& values, double eps) {
  int changes = 0;
  int last = 0;
  for (double v : values) {
    const int s = v > eps ? 1 : (v < -eps ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// At most one change of curvature sign along n samples.
inline bool is_s_curve(const PiecewiseCurve& c, std::size_t n = 512) {
  const auto k = sample_curvature(c, n);
  double peak = 0.0;
  for (double v : k) peak = std::max(peak, std::abs(v));
  return sign_changes(k, 1e-9 * std::max(peak, 1.0)) <= 1;
}

// ----------------------------------------------------------------------------
// Canonical configuration of a tangent pair
// ----------------------------------------------------------------------------

/// The pair normalized to u = (0, e^{i alpha}), v = (1, e^{i beta}) with
/// alpha in [0, pi] and |beta| <= alpha. `to_world` maps the canonical frame
/// back; when `reversed_pair` is set the canonical pair stands for (-v, -u).
struct CanonicalConfig {
  double alpha = 0.0;
  double beta = 0.0;
  Similarity to_world;
  bool reversed_pair = false;

  UnitTangent canonical_u() const { return UnitTangent::from_angle({0.0, 0.0}, alpha); }
  UnitTangent canonical_v() const { return UnitTangent::from_angle({1.0, 0.0}, beta); }

  /// Maps a canonical-frame curve from canonical_u to canonical_v onto a world
  /// curve connecting the original u to v.
  PiecewiseCurve to_world_curve(const PiecewiseCurve& canonical) const {
    auto world = apply(to_world, canonical);
    return reversed_pair ? reversed(world) : world;
  }

  std::pair<UnitTangent, UnitTangent> world_pair() const {
    const UnitTangent cu{to_world(Vec2{0.0, 0.0}), to_world.linear(canonical_u().dir) / to_world.scale};
    const UnitTangent cv{to_world(Vec2{1.0, 0.0}), to_world.linear(canonical_v().dir) / to_world.scale};
    if (!reversed_pair) return {cu, cv};
    return {cv.reversed(), cu.reversed()};
  }
};

inline CanonicalConfig canonicalize(const UnitTangent& u, const UnitTangent& v) {
  const Vec2 chord = v.pos - u.pos;
  const double chord_len = norm(chord);
  if (!(chord_len > 0.0)) throw DomainError("canonicalize: coincident positions");
  const double phi = angle_of(chord);
  const double a = wrap_angle(angle_of(u.dir) - phi);
  const double b = wrap_angle(angle_of(v.dir) - phi);

  CanonicalConfig cfg;
  // Reversal swaps the roles: the pair (-v, -u) has relative angles (b, a).
  cfg.reversed_pair = std::abs(b) > std::abs(a);
  const double first = cfg.reversed_pair ? b : a;
  const double second = cfg.reversed_pair ? a : b;
  const bool reflect = first < 0.0;
  cfg.alpha = reflect ? -first : first;
  cfg.beta = reflect ? -second : second;

  cfg.to_world.scale = chord_len;
  cfg.to_world.reflect = reflect;
  cfg.to_world.rotation = cfg.reversed_pair ? phi + kPi : phi;
  cfg.to_world.translation = cfg.reversed_pair ? v.pos : u.pos;
  return cfg;
}

/// Whether some s-curve connects the canonical pair (alpha, beta).
inline bool feasible(double alpha, double beta) {
  const double slack = tolerances().canonical_slack;
  if (!std::isfinite(alpha) || !std::isfinite(beta) || alpha < -slack || alpha > kPi + slack ||
      std::abs(beta) > alpha + slack) {
    throw DomainError("feasible: (alpha, beta) is not a canonical configuration");
  }
  return alpha < kPi && beta >= alpha - kPi - slack;
}

}  // namespace elastic
