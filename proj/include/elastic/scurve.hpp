#pragma once

// Minimal-bending-energy s-curves between two unit tangent vectors.
//
// Work happens in the canonical frame u = (0, e^{i alpha}), v = (1, e^{i beta}).
// For a right-left s-curve with inflection direction gamma the energy is
// bounded below by
//
//   G(gamma) = (y1 + y2)^2 / (-sin gamma),
//   y1 = 1/2 int_0^{alpha - gamma} sqrt(sin), y2 = 1/2 int_0^{beta - gamma} sqrt(sin),
//
// and G' = sigma / lambda^2 where sigma is the signed gap left between the two
// optimal half curves and lambda = -sin gamma / (y1 + y2) is their common
// dilation. The solver dispatches on (alpha, beta):
//
//   beta == alpha - pi                 u-turn + line (second form)
//   beta >= 0, or sigma(beta) >= 0     minimize G; first or second form
//   beta < 0 and sigma(beta) < 0       single right c-curve from a ray construction

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "elastic/config.hpp"
#include "elastic/elastica.hpp"
#include "elastic/errors.hpp"
#include "elastic/geometry.hpp"

namespace elastic::scurve {

enum class CaseTag { trivial_line, second_form, first_form_interior, first_form_right_c, c_curve_case_c };

inline std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::trivial_line: return "trivial_line";
    case CaseTag::second_form: return "second_form";
    case CaseTag::first_form_interior: return "first_form_interior";
    case CaseTag::first_form_right_c: return "first_form_right_c";
    case CaseTag::c_curve_case_c: return "c_curve_case_c";
  }
  return "unknown";
}

inline std::optional<CaseTag> parse_case_tag(std::string_view s) {
  for (auto tag : {CaseTag::trivial_line, CaseTag::second_form, CaseTag::first_form_interior,
                   CaseTag::first_form_right_c, CaseTag::c_curve_case_c}) {
    if (to_string(tag) == s) return tag;
  }
  return std::nullopt;
}

/// Admissible inflection directions: [alpha - pi, beta] for beta < 0, else [alpha - pi, 0).
struct GammaDomain {
  double lo = 0.0;
  double hi = 0.0;
  bool hi_open = false;

  static GammaDomain of(double alpha, double beta) {
    return {alpha - kPi, std::min(beta, 0.0), beta >= 0.0};
  }

  bool singleton() const { return hi - lo <= tolerances().u_turn_boundary; }

  /// Largest gamma evaluated numerically; stays clear of the pole at 0. The
  /// margin shrinks with alpha so that minimizers of tiny configurations
  /// (gamma* ~ -alpha/3) remain inside the scanned range.
  double scan_hi() const {
    if (!hi_open) return hi;
    const double alpha = lo + kPi;
    return std::max(lo, hi - std::min(tolerances().open_end_margin, 1e-3 * alpha));
  }
};

namespace detail {

inline double checked_limit(double x, const char* what) {
  const double slack = tolerances().canonical_slack;
  if (!(x >= -slack && x <= kPi + slack)) {
    throw DomainError(std::string(what) + ": integration limit outside [0, pi] (gamma not in domain)");
  }
  return std::clamp(x, 0.0, kPi);
}

inline double half_sqrt_sin(double delta) { return elastica::HalfSqrtSinTable::instance()(delta); }

// sqrt(sin x) for x in [0, pi]; evaluates near pi through pi - x so that limits
// which are pi up to rounding give exactly zero.
inline double sqrt_sin(double x) {
  if (x <= 0.5 * kPi) return std::sqrt(std::sin(x));
  double y = kPi - x;
  if (y < 1e-15) y = 0.0;
  return std::sqrt(std::sin(y));
}

}  // namespace detail

inline double y1(double gamma, double alpha) {
  return detail::half_sqrt_sin(detail::checked_limit(alpha - gamma, "y1"));
}

inline double y2(double gamma, double beta) {
  return detail::half_sqrt_sin(detail::checked_limit(beta - gamma, "y2"));
}

/// G, sigma and lambda of a fixed canonical configuration.
class GammaFunctions {
 public:
  GammaFunctions(double alpha, double beta) : alpha_(alpha), beta_(beta) {}

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  double G(double gamma) const {
    const double s = checked_sin(gamma);
    const double y = checked_sum(gamma);
    return y * y / -s;
  }

  double sigma(double gamma) const { return sigma_at(gamma, alpha_ - gamma, beta_ - gamma); }

  /// sigma at gamma = beta - q, taking beta - gamma to be exactly q. Near
  /// gamma = beta, sigma grows like sqrt(beta - gamma), so resolving the root
  /// there needs q itself rather than gamma.
  double sigma_offset(double q) const { return sigma_at(beta_ - q, (alpha_ - beta_) + q, q); }

  double lambda(double gamma) const { return -checked_sin(gamma) / checked_sum(gamma); }

 private:
  double sigma_at(double gamma, double to_alpha, double to_beta) const {
    const double s = checked_sin(gamma);
    const double a = detail::checked_limit(to_alpha, "sigma");
    const double b = detail::checked_limit(to_beta, "sigma");
    const double y = detail::half_sqrt_sin(a) + detail::half_sqrt_sin(b);
    if (!(y > 0.0)) throw DomainError("G: y1 + y2 vanishes");
    return std::cos(gamma) + s / y * (detail::sqrt_sin(a) + detail::sqrt_sin(b));
  }

  double checked_sin(double gamma) const {
    const double s = std::sin(gamma);
    if (!(gamma < 0.0 && s < 0.0)) throw DomainError("G: gamma must be strictly negative");
    return s;
  }

  double checked_sum(double gamma) const {
    const double y = y1(gamma, alpha_) + y2(gamma, beta_);
    if (!(y > 0.0)) throw DomainError("G: y1 + y2 vanishes");
    return y;
  }

  double alpha_;
  double beta_;
};

inline double G(double gamma, double alpha, double beta) { return GammaFunctions(alpha, beta).G(gamma); }
inline double sigma(double gamma, double alpha, double beta) { return GammaFunctions(alpha, beta).sigma(gamma); }
inline double lambda(double gamma, double alpha, double beta) { return GammaFunctions(alpha, beta).lambda(gamma); }

struct GammaMinimum {
  double gamma_star = 0.0;
  double beta_offset = 0.0;  // beta - gamma_star, resolved below the spacing of doubles near gamma_star
  double g_min = 0.0;
  std::vector<double> minimizers;  // every global minimizer found, ascending
};

namespace detail {

inline void require_solvable(double alpha, double beta) {
  if (!feasible(alpha, beta)) throw FeasibilityError(alpha, beta);
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
}

struct Root {
  double gamma;
  double beta_offset;
};

// Bisection for a root of sigma in [lo, hi] with sigma(lo) < 0 <= sigma(hi).
// For beta < 0 the search runs in q = beta - gamma.
inline Root polish_sigma_root(const GammaFunctions& f, double lo, double hi) {
  const double stop = tolerances().sigma_root * 1e-3;
  const double beta = f.beta();
  if (beta < 0.0) {
    double q_lo = beta - hi;  // sigma >= 0
    double q_hi = beta - lo;  // sigma < 0
    double q = 0.5 * (q_lo + q_hi);
    for (int it = 0; it < 200; ++it) {
      q = 0.5 * (q_lo + q_hi);
      const double s = f.sigma_offset(q);
      if (std::abs(s) <= stop || q_hi - q_lo <= 4e-16 * q) break;
      if (s < 0.0) q_hi = q; else q_lo = q;
    }
    return {beta - q, q};
  }
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double s = f.sigma(mid);
    if (std::abs(s) <= stop || hi - lo <= 4e-16 * std::abs(mid)) break;
    if (s < 0.0) lo = mid; else hi = mid;
  }
  return {mid, beta - mid};
}

}  // namespace detail

/// Global minimum of G over the inflection-direction domain.
///
/// A coarse scan brackets every sign change of sigma from negative to positive
/// (local minima, since G' = sigma / lambda^2); each is polished by bisection
/// and compared with the endpoint values. Ties go to the smallest gamma.
inline GammaMinimum minimize_G(double alpha, double beta) {
  detail::require_solvable(alpha, beta);
  const GammaFunctions f(alpha, std::max(beta, alpha - kPi));
  const auto dom = GammaDomain::of(alpha, f.beta());
  if (dom.singleton() || dom.scan_hi() <= dom.lo) {
    return {dom.lo, f.beta() - dom.lo, f.G(dom.lo), {dom.lo}};
  }

  const double hi = dom.scan_hi();
  const int n = tolerances().gamma_scan_points;
  std::vector<detail::Root> candidates{{dom.lo, f.beta() - dom.lo}};
  double prev_gamma = dom.lo;
  double prev_sigma = f.sigma(dom.lo);
  for (int k = 1; k < n; ++k) {
    const double gamma = k == n - 1 ? hi : dom.lo + (hi - dom.lo) * k / (n - 1);
    const double s = f.sigma(gamma);
    if (prev_sigma < 0.0 && s >= 0.0) candidates.push_back(detail::polish_sigma_root(f, prev_gamma, gamma));
    prev_gamma = gamma;
    prev_sigma = s;
  }
  if (!dom.hi_open) candidates.push_back({dom.hi, f.beta() - dom.hi});

  std::vector<double> values;
  values.reserve(candidates.size());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) {
    values.push_back(f.G(c.gamma));
    best = std::min(best, values.back());
  }
  GammaMinimum out;
  out.g_min = best;
  bool first = true;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (values[k] > best * (1.0 + 1e-12)) continue;
    out.minimizers.push_back(candidates[k].gamma);
    if (first) out.beta_offset = candidates[k].beta_offset;
    first = false;
  }
  std::sort(out.minimizers.begin(), out.minimizers.end());
  out.minimizers.erase(std::unique(out.minimizers.begin(), out.minimizers.end(),
                                   [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                       out.minimizers.end());
  out.gamma_star = out.minimizers.front();
  return out;
}

/// Single elastica arc congruent to lambda(gamma) E_[-t1, t2] joining the
/// canonical pair, where turning(0, t1) = alpha - gamma and turning(0, t2) = beta - gamma.
/// Requires sigma(gamma) = 0. The gamma is passed as its offset q = beta - gamma.
inline PiecewiseCurve build_first_form_offset(double alpha, double beta, double q) {
  detail::require_solvable(alpha, beta);
  const GammaFunctions f(alpha, beta);
  const double s = f.sigma_offset(q);
  if (std::abs(s) > tolerances().sigma_consistency) {
    throw InternalError("build_first_form: sigma(gamma) = " + std::to_string(s) + " is not zero");
  }
  const double t1 = elastica::param_from_turning(detail::checked_limit((alpha - beta) + q, "build_first_form"));
  const double t2 = elastica::param_from_turning(detail::checked_limit(q, "build_first_form"));
  ElasticaArc arc;
  arc.t0 = -t1;
  arc.t1 = t2;
  arc.map = Similarity::two_point(elastica::point(-t1), elastica::point(t2), {0.0, 0.0}, {1.0, 0.0});
  return {{arc}};
}

inline PiecewiseCurve build_first_form(double alpha, double beta, double gamma) {
  return build_first_form_offset(alpha, beta, beta - gamma);
}

/// Right u-turn, straight run of length sigma/lambda (model units), then a left
/// arc: the curve lambda e^{i gamma} (E_[-pi,0] + [0,c] + (c + E_[0,t2])) with
/// gamma = alpha - pi. Requires sigma(alpha - pi) >= 0.
inline PiecewiseCurve build_second_form(double alpha, double beta) {
  detail::require_solvable(alpha, beta);
  beta = std::max(beta, alpha - kPi);
  const double gamma = alpha - kPi;
  const GammaFunctions f(alpha, beta);
  const double s = f.sigma(gamma);
  if (s < -tolerances().sigma_consistency) {
    throw InternalError("build_second_form: sigma(alpha - pi) = " + std::to_string(s) + " < 0");
  }
  const double c = std::max(s, 0.0) / f.lambda(gamma);
  const double t2 = elastica::param_from_turning(detail::checked_limit(beta - gamma, "build_second_form"));

  PiecewiseCurve model;
  model.segments.push_back(ElasticaArc{Similarity::identity(), -kPi, 0.0, false});
  Vec2 end{0.0, 0.0};
  if (c > tolerances().min_line_length) {
    model.segments.push_back(LineSegment{{0.0, 0.0}, {c, 0.0}});
    end = {c, 0.0};
  }
  if (t2 > 1e-9) {
    model.segments.push_back(ElasticaArc{Similarity::translate(end), 0.0, t2, false});
    end = end + elastica::point(t2);
  }
  const auto T = Similarity::two_point(elastica::point(-kPi), end, {0.0, 0.0}, {1.0, 0.0});
  return apply(T, model);
}

namespace detail {

// J(t) = E(t) on [-pi, 0] continued by the positive real axis.
inline Vec2 j_point(double t) { return t <= 0.0 ? elastica::point(t) : Vec2{t, 0.0}; }
inline double j_direction(double t) { return t <= 0.0 ? elastica::direction_angle(t) : 0.0; }

struct RayHit {
  double mu;     // J(mu) is where the ray meets J again
  double omega;  // interior angle between the chord and J at J(mu)
};

// Casts the ray from J(t) that makes interior angle alpha with J and returns
// its second intersection with J.
inline RayHit cast_ray(double t, double alpha) {
  const double phi = elastica::direction_angle(t) - alpha;
  const Vec2 origin = j_point(t);
  const Vec2 dir = from_angle(phi);
  const auto lateral = [&](double mu) { return cross(dir, j_point(mu) - origin); };

  double mu;
  if (lateral(0.0) > 0.0) {
    // Crosses the real axis beyond the origin.
    mu = origin.x - origin.y / dir.y * dir.x;
  } else {
    // The lateral offset is positive on (t, mu) and nonpositive on [mu, 0].
    // Safeguarded Newton inside that bracket.
    double lo = t;
    double hi = 0.0;
    mu = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
      const double f = lateral(mu);
      if (f > 0.0) lo = mu; else hi = mu;
      const double s = std::sin(mu);
      const double slope = cross(dir, Vec2{std::cos(mu), s * s / std::sqrt(1.0 + s * s)});
      double next = slope != 0.0 ? mu - f / slope : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const bool done = std::abs(next - mu) <= tolerances().bisection_param * std::max(1.0, std::abs(mu));
      mu = next;
      if (done || hi - lo <= tolerances().bisection_param) break;
    }
  }
  return {mu, phi - j_direction(mu)};
}

}  // namespace detail

struct CaseCParams {
  double t1 = 0.0;
  double t2 = 0.0;
};

/// Parameters -pi < t1 < t2 <= 0 such that the chord [E(t1), E(t2)] meets E with
/// interior angles alpha and -beta. Found by bisection on the interior angle at
/// the second intersection of the ray cast from E(t1).
inline CaseCParams case_c_params(double alpha, double beta) {
  detail::require_solvable(alpha, beta);
  if (!(beta < 0.0 && beta > alpha - kPi)) throw DomainError("case (c) requires alpha - pi < beta < 0");
  const GammaFunctions f(alpha, beta);
  if (f.sigma(beta) > tolerances().sigma_boundary) throw DomainError("case (c) requires sigma(beta) <= 0");
  const double delta = -beta;
  const double b = -elastica::param_from_turning(alpha);

  double lo = -kPi;
  double h_lo = detail::cast_ray(lo, alpha).omega - delta;
  if (!(h_lo > 0.0)) throw InternalError("case (c): omega(-pi) <= delta, no bracket");
  double gap = 1e-9;
  double hi = b - gap;
  double h_hi = detail::cast_ray(hi, alpha).omega - delta;
  while (!(h_hi < 0.0)) {
    gap *= 10.0;
    hi = b - gap;
    if (hi <= lo) throw InternalError("case (c): no sign change of omega - delta");
    h_hi = detail::cast_ray(hi, alpha).omega - delta;
  }
  // Illinois regula falsi on omega(t) - delta.
  int side = 0;
  double t1 = 0.5 * (lo + hi);
  for (int it = 0; it < 200 && hi - lo > tolerances().bisection_param; ++it) {
    t1 = (lo * h_hi - hi * h_lo) / (h_hi - h_lo);
    if (!(t1 > lo && t1 < hi)) t1 = 0.5 * (lo + hi);
    const double h = detail::cast_ray(t1, alpha).omega - delta;
    if (h == 0.0) break;
    if (h > 0.0) {
      lo = t1;
      h_lo = h;
      if (side == 1) h_hi *= 0.5;
      side = 1;
    } else {
      hi = t1;
      h_hi = h;
      if (side == -1) h_lo *= 0.5;
      side = -1;
    }
    if (std::abs(h) < 1e-15) break;
  }
  double t2 = detail::cast_ray(t1, alpha).mu;
  if (t2 > 0.0) {
    if (t2 > tolerances().case_c_t2_clamp) {
      throw InternalError("case (c): terminal parameter t2 = " + std::to_string(t2) + " > 0");
    }
    t2 = 0.0;
  }
  return {t1, t2};
}

inline PiecewiseCurve solve_case_c(double alpha, double beta) {
  const auto p = case_c_params(alpha, beta);
  ElasticaArc arc;
  arc.t0 = p.t1;
  arc.t1 = p.t2;
  arc.map = Similarity::two_point(elastica::point(p.t1), elastica::point(p.t2), {0.0, 0.0}, {1.0, 0.0});
  return {{arc}};
}

struct Diagnostics {
  double g_min = 0.0;
  double sigma_star = 0.0;
  double lambda_star = 0.0;
  std::vector<double> minimizers;
};

struct SolverResult {
  PiecewiseCurve curve;
  double energy = 0.0;
  CaseTag case_tag = CaseTag::trivial_line;
  std::optional<double> gamma_star;
  std::optional<std::pair<double, double>> t_params;
  std::optional<Diagnostics> diagnostics;

  double alpha = 0.0;
  double beta = 0.0;
  bool reversed_pair = false;
  std::optional<double> sigma_beta;

  // Mismatch between the curve's end tangents and the requested pair.
  double position_residual = 0.0;   // relative to chord length
  double direction_residual = 0.0;  // radians
};

namespace detail {

inline double direction_gap(Vec2 a, Vec2 b) { return std::abs(wrap_angle(angle_of(a) - angle_of(b))); }

inline Diagnostics diagnostics_at(const GammaFunctions& f, double gamma, std::vector<double> minimizers) {
  return {f.G(gamma), f.sigma(gamma), f.lambda(gamma), std::move(minimizers)};
}

}  // namespace detail

/// Optimal s-curve from u to v.
inline SolverResult solve(const UnitTangent& u, const UnitTangent& v) {
  const auto cfg = canonicalize(u, v);
  const auto& tol = tolerances();
  const double alpha = cfg.alpha;
  double beta = cfg.beta;
  if (!feasible(alpha, beta)) throw FeasibilityError(alpha, beta);

  SolverResult r;
  r.alpha = alpha;
  r.beta = beta;
  r.reversed_pair = cfg.reversed_pair;

  PiecewiseCurve canonical;
  if (alpha < tol.trivial_alpha) {
    r.case_tag = CaseTag::trivial_line;
    canonical.segments.push_back(LineSegment{{0.0, 0.0}, {1.0, 0.0}});
  } else if (beta <= alpha - kPi + tol.u_turn_boundary) {
    beta = alpha - kPi;
    const GammaFunctions f(alpha, beta);
    r.case_tag = CaseTag::second_form;
    r.gamma_star = beta;
    r.t_params = std::pair{-kPi, 0.0};
    r.diagnostics = detail::diagnostics_at(f, beta, {beta});
    canonical = build_second_form(alpha, beta);
  } else {
    const GammaFunctions f(alpha, beta);
    if (beta < 0.0) r.sigma_beta = f.sigma(beta);
    const bool boundary = r.sigma_beta && std::abs(*r.sigma_beta) <= tol.sigma_boundary;
    if (beta < 0.0 && *r.sigma_beta < 0.0 && !boundary) {
      const auto p = case_c_params(alpha, beta);
      r.case_tag = CaseTag::c_curve_case_c;
      r.t_params = std::pair{p.t1, p.t2};
      canonical = solve_case_c(alpha, beta);
    } else {
      const GammaMinimum m = boundary ? GammaMinimum{beta, 0.0, f.G(beta), {beta}} : minimize_G(alpha, beta);
      const double g = m.gamma_star;
      r.gamma_star = g;
      r.diagnostics = detail::diagnostics_at(f, g, m.minimizers);
      if (g <= alpha - kPi) {
        r.case_tag = CaseTag::second_form;
        const double t2 = elastica::param_from_turning(std::clamp(beta - g, 0.0, kPi));
        r.t_params = std::pair{-kPi, t2};
        canonical = build_second_form(alpha, beta);
      } else {
        r.case_tag = (beta < 0.0 && g >= beta) ? CaseTag::first_form_right_c : CaseTag::first_form_interior;
        const double q = m.beta_offset;
        const double t1 = elastica::param_from_turning(std::clamp((alpha - beta) + q, 0.0, kPi));
        const double t2 = elastica::param_from_turning(std::clamp(q, 0.0, kPi));
        r.t_params = std::pair{-t1, t2};
        canonical = build_first_form_offset(alpha, beta, q);
      }
    }
  }

  r.curve = cfg.to_world_curve(canonical);
  r.energy = energy(r.curve);
  const auto s = start_tangent(r.curve);
  const auto e = end_tangent(r.curve);
  const double chord = norm(v.pos - u.pos);
  r.position_residual = std::max(norm(s.pos - u.pos), norm(e.pos - v.pos)) / chord;
  r.direction_residual = std::max(detail::direction_gap(s.dir, u.dir), detail::direction_gap(e.dir, v.dir));
  return r;
}

}  // namespace elastic::scurve
