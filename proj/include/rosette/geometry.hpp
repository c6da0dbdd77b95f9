#pragma once

// Small 2D vector toolkit shared by every stage of the pipeline.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace rosette {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
constexpr Vec2 operator*(double s, Vec2 a) { return {a.x * s, a.y * s}; }
constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 normalized(Vec2 a) { return a / norm(a); }
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
constexpr Vec2 midpoint(Vec2 a, Vec2 b) { return {(a.x + b.x) * 0.5, (a.y + b.y) * 0.5}; }
inline Vec2 polar(double radius, double angle) {
  return {radius * std::cos(angle), radius * std::sin(angle)};
}
inline double angle_of(Vec2 a) { return std::atan2(a.y, a.x); }

inline Vec2 rotate(Vec2 a, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}

/// Counterclockwise angle from direction `from` to direction `to`, in [0, 2pi).
inline double ccw_angle(Vec2 from, Vec2 to) {
  double a = std::atan2(cross(from, to), dot(from, to));
  if (a < 0.0) a += kTwoPi;
  return a;
}

/// Twice the signed area of triangle abc; positive when counterclockwise.
constexpr double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

inline double signed_area(std::span<const Vec2> poly) {
  double a = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) a += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * a;
}

inline Vec2 centroid(std::span<const Vec2> pts) {
  Vec2 c;
  for (Vec2 p : pts) c += p;
  return c / static_cast<double>(pts.size());
}

/// Incentre of the triangle abc.
inline Vec2 incentre(Vec2 a, Vec2 b, Vec2 c) {
  const double la = distance(b, c);
  const double lb = distance(c, a);
  const double lc = distance(a, b);
  return (a * la + b * lb + c * lc) / (la + lb + lc);
}

/// Distance from p to the closed segment ab.
inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

/// Inside-or-on test with tolerance `eps` against the boundary.
inline bool point_in_polygon(Vec2 p, std::span<const Vec2> poly, double eps = 1e-9) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_distance(p, poly[i], poly[(i + 1) % n]) <= eps) return true;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside;
}

/// Proper intersection of open segments ab and cd (touching endpoints and
/// collinear overlap excluded).
inline bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double eps = 1e-12) {
  const double scale = std::max({norm(b - a), norm(d - c), 1e-300});
  const double e = eps * scale * scale;
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  return ((o1 > e && o2 < -e) || (o1 < -e && o2 > e)) &&
         ((o3 > e && o4 < -e) || (o3 < -e && o4 > e));
}

/// Simple polygon: no two non-adjacent edges cross and no repeated vertex.
inline bool is_simple(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (poly[i] == poly[j]) return false;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) return false;
    }
  }
  return true;
}

struct RayHit {
  double t = 0.0;  // parameter along the first ray
  double s = 0.0;  // parameter along the second ray
  Vec2 point;
};

/// Intersection of rays o1 + t d1 and o2 + s d2 with t, s > 0. Collinear rays
/// pointing at each other meet halfway between their origins.
inline std::optional<RayHit> intersect_rays(Vec2 o1, Vec2 d1, Vec2 o2, Vec2 d2) {
  const double denom = cross(d1, d2);
  const Vec2 w = o2 - o1;
  const double sin_angle = denom / (norm(d1) * norm(d2));
  if (std::abs(sin_angle) < 1e-12) {
    const double gap = norm(w);
    if (gap == 0.0) return std::nullopt;
    const bool collinear = std::abs(cross(d1, w)) <= 1e-12 * norm(d1) * gap;
    if (collinear && dot(d1, w) > 0.0 && dot(d2, w) < 0.0) {
      const Vec2 m = midpoint(o1, o2);
      return RayHit{dot(m - o1, d1) / dot(d1, d1), dot(m - o2, d2) / dot(d2, d2), m};
    }
    return std::nullopt;
  }
  const double t = cross(w, d2) / denom;
  const double s = cross(w, d1) / denom;
  if (t <= 0.0 || s <= 0.0) return std::nullopt;
  return RayHit{t, s, o1 + d1 * t};
}

}  // namespace rosette
