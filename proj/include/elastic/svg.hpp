#pragma once

// Standalone SVG rendering of piecewise curves. The y axis is flipped so that
// the picture has the usual mathematical orientation; all coordinates written
// to the document (paths, markers, viewBox) are in the flipped frame.

#include <algorithm>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "elastic/geometry.hpp"

namespace elastic::svg {

struct RenderStyle {
  double stroke_width = 0.01;  // relative to the larger extent of the drawing
  std::size_t samples_per_segment = 64;
  bool show_tangents = false;
  bool show_inflection = false;
  double padding = 0.05;  // relative to the larger extent of the drawing

  void validate() const {
    if (samples_per_segment < 2) throw DomainError("render: samples per segment must be at least 2");
    if (!(stroke_width > 0.0) || !std::isfinite(stroke_width)) throw DomainError("render: stroke width must be positive");
    if (!(padding >= 0.0) || !std::isfinite(padding)) throw DomainError("render: padding must be nonnegative");
  }
};

struct Box {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  void add(Vec2 p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  bool contains(Vec2 p) const { return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y; }
};

namespace detail {

inline Vec2 flip(Vec2 p) { return {p.x, -p.y}; }

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x == 0.0 ? 0.0 : x);
  return buf;
}

inline std::string point_list(const std::vector<Vec2>& pts) {
  std::string d;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    d += k == 0 ? "M" : " L";
    d += num(pts[k].x) + " " + num(pts[k].y);
  }
  return d;
}

// Points (flipped frame) where the signed curvature changes sign, located at
// the sample midway between the last nonzero sample and the next opposite one.
inline std::vector<Vec2> inflection_points(const PiecewiseCurve& c, std::size_t n) {
  const auto k = sample_curvature(c, n);
  const auto pts = sample(c, n);
  double peak = 0.0;
  for (double v : k) peak = std::max(peak, std::abs(v));
  const double eps = 1e-9 * std::max(peak, 1.0);
  std::vector<Vec2> out;
  int last = 0;
  std::size_t last_index = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int s = k[i] > eps ? 1 : (k[i] < -eps ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) out.push_back(flip(pts[(last_index + i) / 2]));
    last = s;
    last_index = i;
  }
  return out;
}

}  // namespace detail

/// Per-segment polylines in the flipped frame, as written to the document.
inline std::vector<std::vector<Vec2>> segment_polylines(const PiecewiseCurve& c, std::size_t samples) {
  std::vector<std::vector<Vec2>> out;
  for (const auto& seg : c.segments) {
    const std::size_t n = std::holds_alternative<LineSegment>(seg) ? 2 : samples;
    auto pts = sample(PiecewiseCurve{{seg}}, n);
    for (auto& p : pts) p = detail::flip(p);
    out.push_back(std::move(pts));
  }
  return out;
}

/// The viewBox of render(c, style) as (min corner, extent) in the flipped frame.
inline Box view_box(const PiecewiseCurve& c, const RenderStyle& style) {
  style.validate();
  Box box;
  for (const auto& line : segment_polylines(c, style.samples_per_segment)) {
    for (const auto& p : line) box.add(p);
  }
  const double extent = std::max({box.max_x - box.min_x, box.max_y - box.min_y, 1e-12});
  const double tangent_len = style.show_tangents ? 0.1 * extent : 0.0;
  const double pad = style.padding * extent + tangent_len + style.stroke_width * extent;
  box.min_x -= pad;
  box.min_y -= pad;
  box.max_x += pad;
  box.max_y += pad;
  return box;
}

/// Standalone SVG 1.1 document, one path per segment. Lines are drawn as
/// 2-point paths; arcs use style.samples_per_segment points.
inline std::string render(const PiecewiseCurve& c, const RenderStyle& style = {}) {
  style.validate();
  validate(c);
  using detail::num;
  const auto lines = segment_polylines(c, style.samples_per_segment);
  const Box box = view_box(c, style);
  Box drawn;
  for (const auto& line : lines) {
    for (const auto& p : line) drawn.add(p);
  }
  const double inner = std::max({drawn.max_x - drawn.min_x, drawn.max_y - drawn.min_y, 1e-12});
  const double stroke = style.stroke_width * inner;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + num(box.min_x) + " " +
         num(box.min_y) + " " + num(box.max_x - box.min_x) + " " + num(box.max_y - box.min_y) + "\">\n";
  out += "<g fill=\"none\" stroke=\"#1f3b73\" stroke-width=\"" + num(stroke) +
         "\" stroke-linecap=\"round\" stroke-linejoin=\"round\">\n";
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const char* kind = std::holds_alternative<LineSegment>(c.segments[k]) ? "line" : "elastica";
    out += "<path class=\"segment " + std::string(kind) + "\" d=\"" + detail::point_list(lines[k]) + "\"/>\n";
  }
  out += "</g>\n";

  if (style.show_tangents) {
    const double len = 0.1 * inner;
    out += "<g stroke=\"#c0392b\" stroke-width=\"" + num(0.6 * stroke) + "\">\n";
    std::vector<UnitTangent> tangents;
    for (const auto& seg : c.segments) tangents.push_back(start_tangent(seg));
    tangents.push_back(end_tangent(c));
    for (const auto& t : tangents) {
      const Vec2 a = detail::flip(t.pos);
      const Vec2 b = detail::flip(t.pos + len * t.dir);
      out += "<line class=\"tangent\" x1=\"" + num(a.x) + "\" y1=\"" + num(a.y) + "\" x2=\"" + num(b.x) + "\" y2=\"" +
             num(b.y) + "\"/>\n";
    }
    out += "</g>\n";
  }

  if (style.show_inflection) {
    const std::size_t n = std::max<std::size_t>(style.samples_per_segment * c.segments.size(), 2);
    out += "<g fill=\"#e67e22\" stroke=\"none\">\n";
    for (const auto& p : detail::inflection_points(c, n)) {
      out += "<circle class=\"inflection\" cx=\"" + num(p.x) + "\" cy=\"" + num(p.y) + "\" r=\"" + num(2.0 * stroke) +
             "\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace elastic::svg
