#pragma once

#include <cmath>

namespace sentinel {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Vec2 {
  double x{0.0};
  double y{0.0};

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {a.x * s, a.y * s}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

// Points and velocities share the representation.
using Point2 = Vec2;

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

inline double distance(Point2 a, Point2 b) { return norm(a - b); }

inline constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

inline Vec2 unit_at(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a + kPi, kTwoPi);
  if (a <= 0.0) a += kTwoPi;
  return a - kPi;
}

// Velocity of length min(speed, |to - from|) pointing from `from` to `to`.
// Zero when the points coincide.
inline Vec2 seek(Point2 from, Point2 to, double speed) {
  const Vec2 d = to - from;
  const double len = norm(d);
  if (len <= 0.0) return {};
  const double step = len < speed ? len : speed;
  return d * (step / len);
}

}  // namespace sentinel
