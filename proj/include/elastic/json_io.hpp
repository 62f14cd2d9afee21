#pragma once

// JSON schema shared by the command-line tool and the HTTP service.
//
// Points and vectors are [x, y] arrays. Curves are {"segments": [...]}, each
// segment tagged by "kind". Parsing failures of any sort surface as
// DomainError so that callers can map them to a single "malformed" outcome.

#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "elastic/geometry.hpp"
#include "elastic/scurve.hpp"
#include "elastic/spline.hpp"

namespace elastic {

using json = nlohmann::json;

namespace detail {

inline double finite_number(const json& j, const char* what) {
  if (!j.is_number()) throw DomainError(std::string(what) + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite number");
  return x;
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw DomainError(std::string("expected an object with field \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) throw DomainError(std::string("missing field \"") + key + "\"");
  return *it;
}

inline bool flag(const json& j, const char* key, bool fallback) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  if (!it->is_boolean()) throw DomainError(std::string("field \"") + key + "\" must be a boolean");
  return it->get<bool>();
}

}  // namespace detail

inline json to_json_value(Vec2 p) { return json::array({p.x, p.y}); }

inline Vec2 vec2_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("point: expected [x, y]");
  return {detail::finite_number(j[0], "point"), detail::finite_number(j[1], "point")};
}

inline json to_json_value(const UnitTangent& u) { return {{"pos", to_json_value(u.pos)}, {"dir", to_json_value(u.dir)}}; }

/// Directions are normalized; a zero direction is rejected.
inline UnitTangent unit_tangent_from_json(const json& j) {
  return UnitTangent::make(vec2_from_json(detail::field(j, "pos")), vec2_from_json(detail::field(j, "dir")));
}

inline json to_json_value(const Similarity& s) {
  return {{"scale", s.scale}, {"rotation", s.rotation}, {"translation", to_json_value(s.translation)}, {"reflect", s.reflect}};
}

inline Similarity similarity_from_json(const json& j) {
  Similarity s;
  s.scale = detail::finite_number(detail::field(j, "scale"), "scale");
  s.rotation = detail::finite_number(detail::field(j, "rotation"), "rotation");
  s.translation = vec2_from_json(detail::field(j, "translation"));
  s.reflect = detail::flag(j, "reflect", false);
  if (!(s.scale > 0.0)) throw DomainError("similarity: scale must be positive");
  return s;
}

inline json to_json_value(const CurveSegment& seg) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LineSegment>) {
          return {{"kind", "line"}, {"A", to_json_value(s.a)}, {"B", to_json_value(s.b)}};
        } else {
          return {{"kind", "elastica"}, {"map", to_json_value(s.map)}, {"t0", s.t0}, {"t1", s.t1}, {"reversed", s.reversed}};
        }
      },
      seg);
}

inline CurveSegment segment_from_json(const json& j) {
  const json& kind = detail::field(j, "kind");
  if (!kind.is_string()) throw DomainError("segment: \"kind\" must be a string");
  CurveSegment seg;
  if (kind == "line") {
    seg = LineSegment{vec2_from_json(detail::field(j, "A")), vec2_from_json(detail::field(j, "B"))};
  } else if (kind == "elastica") {
    ElasticaArc arc;
    arc.map = similarity_from_json(detail::field(j, "map"));
    arc.t0 = detail::finite_number(detail::field(j, "t0"), "t0");
    arc.t1 = detail::finite_number(detail::field(j, "t1"), "t1");
    arc.reversed = detail::flag(j, "reversed", false);
    seg = arc;
  } else {
    throw DomainError("segment: unknown kind \"" + kind.get<std::string>() + "\"");
  }
  validate(seg);
  return seg;
}

inline json to_json_value(const PiecewiseCurve& c) {
  json segs = json::array();
  for (const auto& s : c.segments) segs.push_back(to_json_value(s));
  return {{"segments", std::move(segs)}};
}

inline PiecewiseCurve curve_from_json(const json& j) {
  const json& segs = detail::field(j, "segments");
  if (!segs.is_array()) throw DomainError("curve: \"segments\" must be an array");
  PiecewiseCurve c;
  for (const auto& s : segs) c.segments.push_back(segment_from_json(s));
  validate(c);
  return c;
}

inline json polyline_json(const std::vector<Vec2>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(to_json_value(p));
  return out;
}

// ---------------------------------------------------------------------------
// Solver results

namespace detail {

inline json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

inline std::optional<double> optional_number_from(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return finite_number(*it, key);
}

}  // namespace detail

inline json to_json_value(const scurve::SolverResult& r) {
  json out;
  out["case_tag"] = std::string(scurve::to_string(r.case_tag));
  out["energy"] = r.energy;
  out["gamma_star"] = detail::optional_number(r.gamma_star);
  out["t_params"] = r.t_params ? json::array({r.t_params->first, r.t_params->second}) : json(nullptr);
  out["alpha"] = r.alpha;
  out["beta"] = r.beta;
  out["reversed_pair"] = r.reversed_pair;
  out["sigma_beta"] = detail::optional_number(r.sigma_beta);
  out["residuals"] = {{"position", r.position_residual}, {"direction", r.direction_residual}};
  if (r.diagnostics) {
    const auto& d = *r.diagnostics;
    out["diagnostics"] = {{"g_min", d.g_min}, {"sigma_star", d.sigma_star}, {"lambda_star", d.lambda_star},
                          {"minimizers", d.minimizers}};
  } else {
    out["diagnostics"] = nullptr;
  }
  out["curve"] = to_json_value(r.curve);
  return out;
}

inline scurve::SolverResult solver_result_from_json(const json& j) {
  scurve::SolverResult r;
  const json& tag = detail::field(j, "case_tag");
  if (!tag.is_string()) throw DomainError("case_tag must be a string");
  const auto parsed = scurve::parse_case_tag(tag.get<std::string>());
  if (!parsed) throw DomainError("unknown case_tag \"" + tag.get<std::string>() + "\"");
  r.case_tag = *parsed;
  r.energy = detail::finite_number(detail::field(j, "energy"), "energy");
  r.gamma_star = detail::optional_number_from(j, "gamma_star");
  if (const auto it = j.find("t_params"); it != j.end() && !it->is_null()) {
    const Vec2 t = vec2_from_json(*it);
    r.t_params = std::pair{t.x, t.y};
  }
  r.alpha = detail::finite_number(detail::field(j, "alpha"), "alpha");
  r.beta = detail::finite_number(detail::field(j, "beta"), "beta");
  r.reversed_pair = detail::flag(j, "reversed_pair", false);
  r.sigma_beta = detail::optional_number_from(j, "sigma_beta");
  if (const auto it = j.find("residuals"); it != j.end() && !it->is_null()) {
    r.position_residual = detail::finite_number(detail::field(*it, "position"), "position");
    r.direction_residual = detail::finite_number(detail::field(*it, "direction"), "direction");
  }
  if (const auto it = j.find("diagnostics"); it != j.end() && !it->is_null()) {
    scurve::Diagnostics d;
    d.g_min = detail::finite_number(detail::field(*it, "g_min"), "g_min");
    d.sigma_star = detail::finite_number(detail::field(*it, "sigma_star"), "sigma_star");
    d.lambda_star = detail::finite_number(detail::field(*it, "lambda_star"), "lambda_star");
    const json& m = detail::field(*it, "minimizers");
    if (!m.is_array()) throw DomainError("minimizers must be an array");
    for (const auto& g : m) d.minimizers.push_back(detail::finite_number(g, "minimizer"));
    r.diagnostics = std::move(d);
  }
  r.curve = curve_from_json(detail::field(j, "curve"));
  return r;
}

/// Request body of a single solve: {"u": UnitTangent, "v": UnitTangent}.
inline std::pair<UnitTangent, UnitTangent> tangent_pair_from_json(const json& j) {
  return {unit_tangent_from_json(detail::field(j, "u")), unit_tangent_from_json(detail::field(j, "v"))};
}

// ---------------------------------------------------------------------------
// Splines

inline json to_json_value(const spline::SplineProblem& p) {
  json pts = json::array();
  for (const auto& q : p.points) pts.push_back(to_json_value(q));
  json out{{"points", std::move(pts)}, {"closed", p.closed}};
  if (!p.fixed_dirs.empty()) {
    json dirs = json::array();
    for (const auto& d : p.fixed_dirs) dirs.push_back(d ? to_json_value(*d) : json(nullptr));
    out["fixed_dirs"] = std::move(dirs);
  }
  return out;
}

inline spline::SplineProblem spline_problem_from_json(const json& j) {
  spline::SplineProblem p;
  const json& pts = detail::field(j, "points");
  if (!pts.is_array()) throw DomainError("points must be an array");
  for (const auto& q : pts) p.points.push_back(vec2_from_json(q));
  if (const auto it = j.find("fixed_dirs"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw DomainError("fixed_dirs must be an array");
    for (const auto& d : *it) {
      p.fixed_dirs.push_back(d.is_null() ? std::nullopt : std::optional<Vec2>(vec2_from_json(d)));
    }
  }
  p.closed = detail::flag(j, "closed", false);
  p.validate();
  return p;
}

/// Reads the optional "options" object; absent keys keep their defaults.
inline spline::FitOptions fit_options_from_json(const json& j) {
  spline::FitOptions o;
  const auto it = j.find("options");
  if (it == j.end() || it->is_null()) return o;
  const json& opt = *it;
  if (!opt.is_object()) throw DomainError("options must be an object");
  if (opt.contains("tol")) o.tol = detail::finite_number(opt["tol"], "tol");
  const auto count = [&](const char* key, int& out) {
    if (!opt.contains(key)) return;
    if (!opt[key].is_number_integer() || opt[key].get<long long>() < 0) {
      throw DomainError(std::string(key) + " must be a nonnegative integer");
    }
    out = static_cast<int>(opt[key].get<long long>());
  };
  count("max_iters", o.max_iters);
  count("restarts", o.restarts);
  if (opt.contains("seed")) {
    if (!opt["seed"].is_number_unsigned()) throw DomainError("seed must be a nonnegative integer");
    o.seed = opt["seed"].get<std::uint64_t>();
  }
  if (!(o.tol > 0.0)) throw DomainError("tol must be positive");
  return o;
}

/// Per-segment polylines are included when samples_per_segment > 0.
inline json to_json_value(const spline::SplineFit& f, std::size_t samples_per_segment = 0) {
  json out;
  out["total_energy"] = f.total_energy;
  out["segment_energies"] = f.segment_energies;
  out["angles"] = f.angles;
  out["iterations"] = f.iterations;
  out["converged"] = f.converged;
  out["trace"] = f.trace;
  json segs = json::array();
  for (const auto& s : f.segments) {
    json js = to_json_value(s);
    if (samples_per_segment > 0) js["polyline"] = polyline_json(sample(s.curve, samples_per_segment));
    segs.push_back(std::move(js));
  }
  out["segments"] = std::move(segs);
  out["curve"] = to_json_value(f.curve);
  return out;
}

inline spline::SplineFit spline_fit_from_json(const json& j) {
  spline::SplineFit f;
  const auto numbers = [&](const char* key) {
    const json& a = detail::field(j, key);
    if (!a.is_array()) throw DomainError(std::string(key) + " must be an array");
    std::vector<double> out;
    for (const auto& x : a) out.push_back(detail::finite_number(x, key));
    return out;
  };
  f.total_energy = detail::finite_number(detail::field(j, "total_energy"), "total_energy");
  f.segment_energies = numbers("segment_energies");
  f.angles = numbers("angles");
  f.trace = numbers("trace");
  const json& it = detail::field(j, "iterations");
  if (!it.is_number_integer()) throw DomainError("iterations must be an integer");
  f.iterations = it.get<int>();
  f.converged = detail::flag(j, "converged", false);
  const json& segs = detail::field(j, "segments");
  if (!segs.is_array()) throw DomainError("segments must be an array");
  for (const auto& s : segs) f.segments.push_back(solver_result_from_json(s));
  f.curve = curve_from_json(detail::field(j, "curve"));
  return f;
}

inline json to_json_value(const SegmentReport& r) {
  return {{"index", r.index}, {"feasible", r.feasible}, {"alpha", r.alpha}, {"beta", r.beta}, {"message", r.message}};
}

inline json report_json(const std::vector<SegmentReport>& report) {
  json out = json::array();
  for (const auto& r : report) out.push_back(to_json_value(r));
  return out;
}

/// Parses text, mapping syntax errors to DomainError.
inline json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

/// Runs a schema reader, mapping type errors from the JSON library to DomainError.
template <class Reader>
auto read_schema(const json& j, Reader&& reader) -> decltype(reader(j)) {
  try {
    return reader(j);
  } catch (const json::exception& e) {
    throw DomainError(std::string("schema mismatch: ") + e.what());
  }
}

}  // namespace elastic
