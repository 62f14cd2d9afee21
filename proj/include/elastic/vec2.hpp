#pragma once

#include <cmath>

namespace elastic {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) noexcept { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) noexcept { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(double s) noexcept { x *= s; y *= s; return *this; }

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) noexcept { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) noexcept { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) noexcept { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator/(Vec2 a, double s) noexcept { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) noexcept = default;
};

constexpr double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) noexcept { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) noexcept { return std::hypot(a.x, a.y); }
inline double angle_of(Vec2 a) noexcept { return std::atan2(a.y, a.x); }
inline Vec2 from_angle(double theta) noexcept { return {std::cos(theta), std::sin(theta)}; }
constexpr Vec2 conj(Vec2 a) noexcept { return {a.x, -a.y}; }

inline Vec2 rotate(Vec2 a, double theta) noexcept {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}

// Complex multiplication, treating points as x + iy.
constexpr Vec2 cmul(Vec2 a, Vec2 b) noexcept {
  return {a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x};
}

inline Vec2 cdiv(Vec2 a, Vec2 b) noexcept {
  const double den = b.x * b.x + b.y * b.y;
  return {(a.x * b.x + a.y * b.y) / den, (a.y * b.x - a.x * b.y) / den};
}

// Wrap to (-pi, pi].
inline double wrap_angle(double a) noexcept {
  constexpr double two_pi = 2.0 * 3.14159265358979323846;
  a = std::remainder(a, two_pi);
  if (a <= -3.14159265358979323846) a += two_pi;
  return a;
}

}  // namespace elastic
