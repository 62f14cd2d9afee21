#pragma once

// Elastic splines: interpolants through P_1..P_n whose every piece is an
// optimal s-curve. Node tangent angles are the free variables; the total
// energy is the sum of the per-piece optimal energies and is minimized by
// coordinate descent (golden section per angle) with multi-start.
//
// This is a local heuristic; no global-optimality claim is made.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "elastic/config.hpp"
#include "elastic/errors.hpp"
#include "elastic/geometry.hpp"
#include "elastic/scurve.hpp"

namespace elastic::spline {

struct SplineProblem {
  std::vector<Vec2> points;
  std::vector<std::optional<Vec2>> fixed_dirs;  // empty, or one entry per point
  bool closed = false;

  std::size_t segment_count() const { return closed ? points.size() : points.size() - 1; }

  std::pair<std::size_t, std::size_t> segment_ends(std::size_t k) const { return {k, (k + 1) % points.size()}; }

  bool is_fixed(std::size_t i) const { return !fixed_dirs.empty() && fixed_dirs[i].has_value(); }

  void validate() const {
    if (points.size() < 2) throw DomainError("spline: need at least two points");
    if (!fixed_dirs.empty() && fixed_dirs.size() != points.size()) {
      throw DomainError("spline: fixed_dirs must be empty or match the point count");
    }
    for (const auto& p : points) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw DomainError("spline: non-finite point");
    }
    for (std::size_t k = 0; k < segment_count(); ++k) {
      const auto [i, j] = segment_ends(k);
      if (!(norm(points[j] - points[i]) > 0.0)) {
        throw DomainError("spline: consecutive points " + std::to_string(i) + " and " + std::to_string(j) +
                          " coincide");
      }
    }
    for (const auto& d : fixed_dirs) {
      if (d && !(norm(*d) > 0.0 && std::isfinite(d->x) && std::isfinite(d->y))) {
        throw DomainError("spline: fixed direction must be a nonzero finite vector");
      }
    }
  }
};

struct FitOptions {
  double tol = tolerances().fit_tol;
  int max_iters = tolerances().fit_max_iters;
  int restarts = tolerances().fit_restarts;
  std::uint64_t seed = 0;
};

struct SplineFit {
  PiecewiseCurve curve;
  std::vector<double> angles;
  std::vector<double> segment_energies;
  double total_energy = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;  // total energy after every coordinate step of the kept start
  std::vector<scurve::SolverResult> segments;
};

namespace detail {

inline constexpr double kInfeasible = std::numeric_limits<double>::infinity();

inline UnitTangent node(const SplineProblem& p, std::span<const double> angles, std::size_t i) {
  if (p.is_fixed(i)) return UnitTangent::make(p.points[i], *p.fixed_dirs[i]);
  return UnitTangent::from_angle(p.points[i], angles[i]);
}

inline double segment_energy(const SplineProblem& p, std::span<const double> angles, std::size_t k) {
  const auto [i, j] = p.segment_ends(k);
  try {
    return scurve::solve(node(p, angles, i), node(p, angles, j)).energy;
  } catch (const FeasibilityError&) {
    return kInfeasible;
  }
}

inline std::vector<double> initial_angles(const SplineProblem& p) {
  const std::size_t n = p.points.size();
  const auto chord = [&](std::size_t i, std::size_t j) {
    const Vec2 c = p.points[j] - p.points[i];
    return c / norm(c);
  };
  std::vector<double> angles(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (p.is_fixed(i)) {
      angles[i] = angle_of(*p.fixed_dirs[i]);
      continue;
    }
    const bool has_prev = p.closed || i > 0;
    const bool has_next = p.closed || i + 1 < n;
    const std::size_t prev = (i + n - 1) % n;
    const std::size_t next = (i + 1) % n;
    if (!has_prev) {
      angles[i] = angle_of(chord(i, next));
    } else if (!has_next) {
      angles[i] = angle_of(chord(prev, i));
    } else {
      const Vec2 in = chord(prev, i);
      const Vec2 avg = in + chord(i, next);
      // A full reversal averages to zero; fall back to the perpendicular.
      angles[i] = norm(avg) > 1e-12 ? angle_of(avg) : angle_of(in) + 0.5 * kPi;
    }
  }
  return angles;
}

// Segments touching node i.
inline std::vector<std::size_t> incident(const SplineProblem& p, std::size_t i) {
  const std::size_t n = p.points.size();
  std::vector<std::size_t> out;
  if (p.closed) {
    out.push_back((i + n - 1) % n);
    if (n > 1 && (i + n - 1) % n != i) out.push_back(i);
  } else {
    if (i > 0) out.push_back(i - 1);
    if (i + 1 < n) out.push_back(i);
  }
  return out;
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  // Uniform in [0, 1).
  double uniform() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

struct Descent {
  std::vector<double> angles;
  std::vector<double> energies;
  double total = kInfeasible;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

inline double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

inline Descent coordinate_descent(const SplineProblem& p, std::vector<double> angles, const FitOptions& opts) {
  constexpr double kGolden = 0.6180339887498949;
  const std::size_t n = p.points.size();
  Descent d;
  d.energies.resize(p.segment_count());
  for (std::size_t k = 0; k < d.energies.size(); ++k) d.energies[k] = segment_energy(p, angles, k);
  d.total = sum(d.energies);
  d.angles = std::move(angles);
  if (!std::isfinite(d.total)) return d;
  d.trace.push_back(d.total);

  std::vector<double> window(n, 0.25 * kPi);
  bool any_free = false;
  for (std::size_t i = 0; i < n; ++i) any_free = any_free || !p.is_fixed(i);
  if (!any_free) {
    d.converged = true;
    return d;
  }

  for (int sweep = 1; sweep <= opts.max_iters; ++sweep) {
    const double before = d.total;
    for (std::size_t i = 0; i < n; ++i) {
      if (p.is_fixed(i)) continue;
      const auto segs = incident(p, i);
      const double current = d.angles[i];
      std::vector<double> trial_energies(segs.size());
      const auto objective = [&](double theta) {
        d.angles[i] = theta;
        double e = 0.0;
        for (std::size_t s = 0; s < segs.size(); ++s) {
          trial_energies[s] = segment_energy(p, d.angles, segs[s]);
          e += trial_energies[s];
        }
        return e;
      };
      double current_value = 0.0;
      for (auto s : segs) current_value += d.energies[s];

      double best_theta = current;
      double best_value = current_value;
      const auto consider = [&](double theta, double value) {
        if (value < best_value) {
          best_value = value;
          best_theta = theta;
        }
      };
      double a = current - window[i];
      double b = current + window[i];
      double x1 = b - kGolden * (b - a);
      double x2 = a + kGolden * (b - a);
      double f1 = objective(x1);
      double f2 = objective(x2);
      consider(x1, f1);
      consider(x2, f2);
      for (int it = 0; it < 40 && b - a > 1e-9; ++it) {
        if (f1 <= f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - kGolden * (b - a);
          f1 = objective(x1);
          consider(x1, f1);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + kGolden * (b - a);
          f2 = objective(x2);
          consider(x2, f2);
        }
      }

      if (best_value < current_value) {
        d.angles[i] = best_theta;
        for (auto s : segs) d.energies[s] = segment_energy(p, d.angles, s);
        d.total = sum(d.energies);
      } else {
        d.angles[i] = current;
      }
      window[i] = std::clamp(2.0 * std::abs(d.angles[i] - current), 1e-3, 0.5 * kPi);
      d.trace.push_back(d.total);
    }
    d.iterations = sweep;
    if (before - d.total < opts.tol) {
      d.converged = true;
      break;
    }
  }
  return d;
}

inline std::vector<SegmentReport> feasibility_report(const SplineProblem& p, std::span<const double> angles) {
  std::vector<SegmentReport> report;
  for (std::size_t k = 0; k < p.segment_count(); ++k) {
    const auto [i, j] = p.segment_ends(k);
    SegmentReport r;
    r.index = k;
    const auto cfg = canonicalize(node(p, angles, i), node(p, angles, j));
    r.alpha = cfg.alpha;
    r.beta = cfg.beta;
    r.feasible = feasible(cfg.alpha, cfg.beta);
    r.message = r.feasible ? "ok" : "no s-curve connects the node tangents";
    report.push_back(std::move(r));
  }
  return report;
}

}  // namespace detail

/// Sum of optimal s-curve energies over consecutive node pairs, or nullopt if
/// any pair admits no s-curve.
inline std::optional<double> total_energy(const SplineProblem& problem, std::span<const double> angles) {
  problem.validate();
  if (angles.size() != problem.points.size()) throw DomainError("total_energy: one angle per point required");
  double total = 0.0;
  for (std::size_t k = 0; k < problem.segment_count(); ++k) {
    const double e = detail::segment_energy(problem, angles, k);
    if (!std::isfinite(e)) return std::nullopt;
    total += e;
  }
  return total;
}

/// Assembles the spline for fixed node angles.
inline SplineFit assemble(const SplineProblem& problem, std::vector<double> angles) {
  SplineFit fit;
  for (std::size_t k = 0; k < problem.segment_count(); ++k) {
    const auto [i, j] = problem.segment_ends(k);
    auto r = scurve::solve(detail::node(problem, angles, i), detail::node(problem, angles, j));
    fit.segment_energies.push_back(r.energy);
    fit.curve = concat(std::move(fit.curve), r.curve);
    fit.segments.push_back(std::move(r));
  }
  fit.total_energy = detail::sum(fit.segment_energies);
  fit.angles = std::move(angles);
  return fit;
}

inline SplineFit fit(const SplineProblem& problem, const FitOptions& opts = {}) {
  problem.validate();
  const auto base = detail::initial_angles(problem);
  detail::SplitMix64 rng(opts.seed);

  std::optional<detail::Descent> best;
  for (int start = 0; start <= std::max(opts.restarts, 0); ++start) {
    auto init = base;
    if (start > 0) {
      for (std::size_t i = 0; i < init.size(); ++i) {
        const double jitter = (2.0 * rng.uniform() - 1.0) * 0.5;
        if (!problem.is_fixed(i)) init[i] += jitter;
      }
    }
    auto run = detail::coordinate_descent(problem, std::move(init), opts);
    if (!std::isfinite(run.total)) continue;
    if (!best || run.total < best->total) best = std::move(run);
  }
  if (!best) {
    throw FitError("spline: no feasible initialization found", detail::feasibility_report(problem, base));
  }

  auto out = assemble(problem, std::move(best->angles));
  out.iterations = best->iterations;
  out.converged = best->converged;
  out.trace = std::move(best->trace);
  return out;
}

}  // namespace elastic::spline
