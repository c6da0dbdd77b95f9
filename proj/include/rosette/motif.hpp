#pragma once

/**
 * Motif constructions: the wheel construction for stars inside cyclic
 * polygons and polygons-in-contact (PIC) for everything else.
 *
 * PIC rays: every edge i -> i+1 of a counterclockwise polygon grows two rays
 * from its midpoint. The forward ray is the edge direction turned
 * counterclockwise by its angle, the backward ray is the reversed edge
 * direction turned clockwise by its angle. Ray 2e is the forward ray of
 * edge e and ray 2e+1 its backward ray.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rosette/error.hpp"
#include "rosette/geometry.hpp"

namespace rosette {

struct Segment {
  Vec2 a;
  Vec2 b;

  friend bool operator==(const Segment&, const Segment&) = default;
};

using Motif = std::vector<Segment>;

// ---------------------------------------------------------------------------
// Inner-circle ratios

namespace detail {

inline void check_theta(double theta) {
  if (!(theta > 0.0 && theta < kPi / 2.0)) {
    throw Error(ErrorCode::IncompatibleAngle, "contact angle must lie in (0, pi/2), got " + std::to_string(theta));
  }
}

}  // namespace detail

/**
 * Star joining consecutive edge midpoints of a regular n-gon at contact
 * angle theta. Returns the inner vertex radius relative to the polygon's
 * circumradius: 1 - sin(pi/n) sin(theta) / sin(pi(n+2)/2n - theta).
 */
inline double alpha_from_theta_consecutive(int n, double theta) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "n must be >= 3");
  detail::check_theta(theta);
  const double den = std::sin(kPi * (n + 2) / (2.0 * n) - theta);
  if (std::abs(den) < 1e-12) throw Error(ErrorCode::IncompatibleAngle, "rays are parallel");
  const double alpha = 1.0 - std::sin(kPi / n) * std::sin(theta) / den;
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::IncompatibleAngle, "alpha " + std::to_string(alpha) + " outside (0, 1)");
  }
  return alpha;
}

/**
 * Star joining every other edge midpoint of a regular n-gon at contact
 * angle theta. Returns the inner vertex radius relative to the midpoint
 * radius: 1 - 2 sin(pi/n) sin(theta - pi/n) / sin(pi/2 + 2pi/n - theta).
 * theta = pi/n gives the zero-depth star (alpha = 1); smaller angles have no
 * star.
 */
inline double alpha_from_theta_skip(int n, double theta) {
  if (n < 5) throw Error(ErrorCode::InvalidArgument, "n must be >= 5");
  detail::check_theta(theta);
  if (theta < kPi / n) {
    throw Error(ErrorCode::IncompatibleAngle, "contact angle below pi/" + std::to_string(n));
  }
  const double den = std::sin(kPi / 2.0 + 2.0 * kPi / n - theta);
  if (std::abs(den) < 1e-12) throw Error(ErrorCode::IncompatibleAngle, "rays are parallel");
  const double alpha = 1.0 - 2.0 * std::sin(kPi / n) * std::sin(theta - kPi / n) / den;
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::IncompatibleAngle, "alpha " + std::to_string(alpha) + " outside (0, 1]");
  }
  return alpha;
}

/// The skip relation with the extra sin(pi(n-2)/2n) factor, kept only to
/// compare against the exact form.
inline double alpha_skip_as_printed(int n, double theta) {
  return 1.0 - 2.0 * std::sin(kPi / n) * std::sin(kPi * (n - 2) / (2.0 * n)) * std::sin(theta - kPi / n) /
                   std::sin(kPi / 2.0 + 2.0 * kPi / n - theta);
}

// ---------------------------------------------------------------------------
// Wheel construction

/**
 * For each i the chord points[i] -> points[i + skip] is bisected; the inner
 * vertex x is where the bisector meets the circle (o, rho), taking the
 * intersection nearer the chord midpoint. Emits p - x and q - x.
 */
inline Motif wheel_star(std::span<const Vec2> points, Vec2 o, double rho, int skip) {
  const int n = static_cast<int>(points.size());
  if (skip < 1 || n < 2 * skip + 1) throw Error(ErrorCode::InvalidArgument, "too few star points for the skip");
  if (!(rho > 0.0)) throw Error(ErrorCode::InvalidArgument, "inner radius must be positive");
  Motif out;
  for (int i = 0; i < n; ++i) {
    const Vec2 p = points[static_cast<std::size_t>(i)];
    const Vec2 q = points[static_cast<std::size_t>((i + skip) % n)];
    const Vec2 m = midpoint(p, q);
    const Vec2 d = normalized(perp(q - p));
    const Vec2 w = m - o;
    if (norm(w) <= 1e-12 * std::max(rho, norm(q - p))) throw StarDistortion(i);
    // |w + t d|^2 = rho^2
    const double b = dot(w, d);
    const double c = dot(w, w) - rho * rho;
    const double disc = b * b - c;
    if (disc < 0.0) throw StarDistortion(i);
    const double s = std::sqrt(disc);
    const double t1 = -b - s, t2 = -b + s;
    const double t = std::abs(t1) <= std::abs(t2) ? t1 : t2;
    const Vec2 x = m + d * t;
    out.push_back({p, x});
    out.push_back({q, x});
  }
  return out;
}

/**
 * Star of order m in a cyclic polygon: star points at the edge midpoints,
 * inner radius alpha * R cos(pi/m) with R the polygon's circumradius and
 * alpha from the skip relation (or the override), every other point joined.
 */
inline Motif star_in_cyclic_polygon(std::span<const Vec2> polygon, Vec2 center, double theta,
                                    std::optional<double> alpha_override = std::nullopt) {
  const int m = static_cast<int>(polygon.size());
  if (m < 5) throw Error(ErrorCode::InvalidArgument, "a star needs a polygon with at least five vertices");
  double R = 0.0;
  for (Vec2 p : polygon) R += distance(p, center);
  R /= m;
  double alpha;
  if (alpha_override) {
    if (!(*alpha_override > 0.0 && *alpha_override < 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "alpha override must lie in (0, 1)");
    }
    alpha = *alpha_override;
  } else {
    alpha = alpha_from_theta_skip(m, theta);
  }
  std::vector<Vec2> star_points;
  for (int i = 0; i < m; ++i) {
    star_points.push_back(midpoint(polygon[static_cast<std::size_t>(i)], polygon[static_cast<std::size_t>((i + 1) % m)]));
  }
  return wheel_star(star_points, center, alpha * R * std::cos(kPi / m), 2);
}

// ---------------------------------------------------------------------------
// Polygons in contact

struct EdgeRays {
  double forward = 0.0;
  double backward = 0.0;

  friend bool operator==(const EdgeRays&, const EdgeRays&) = default;
};

struct RayPair {
  int first = 0;
  int second = 0;
  Vec2 meet;
  /// A single straight segment from origin to origin (no meeting point).
  bool straight = false;

  friend bool operator==(const RayPair&, const RayPair&) = default;
};

struct PicMotif {
  std::vector<RayPair> pairs;
  bool fallback = false;

  friend bool operator==(const PicMotif&, const PicMotif&) = default;
};

namespace detail {

struct Ray {
  Vec2 origin;
  Vec2 dir;
};

inline std::vector<Ray> pic_rays(std::span<const Vec2> poly, std::span<const EdgeRays> angles) {
  const std::size_t n = poly.size();
  std::vector<Ray> rays;
  for (std::size_t e = 0; e < n; ++e) {
    const Vec2 p = poly[e], q = poly[(e + 1) % n];
    const Vec2 d = normalized(q - p);
    const Vec2 m = midpoint(p, q);
    rays.push_back({m, rotate(d, angles[e].forward)});
    rays.push_back({m, rotate(-d, -angles[e].backward)});
  }
  return rays;
}

inline double polygon_scale(std::span<const Vec2> poly) {
  double s = 0.0;
  for (Vec2 p : poly) s = std::max(s, distance(p, poly[0]));
  return s;
}

}  // namespace detail

inline Vec2 ray_origin(std::span<const Vec2> poly, int ray) {
  const std::size_t e = static_cast<std::size_t>(ray / 2);
  return midpoint(poly[e], poly[(e + 1) % poly.size()]);
}

/// Segments of a PIC motif in pair order: two per meeting pair, one per
/// straight pair.
inline Motif segments_of(const PicMotif& motif, std::span<const Vec2> poly) {
  Motif out;
  for (const auto& pr : motif.pairs) {
    const Vec2 a = ray_origin(poly, pr.first), b = ray_origin(poly, pr.second);
    if (pr.straight) {
      out.push_back({a, b});
    } else {
      out.push_back({a, pr.meet});
      out.push_back({b, pr.meet});
    }
  }
  return out;
}

/**
 * PIC motif. First pairs the forward ray of every edge with the backward
 * ray of the next edge; if any of those misses or meets outside the
 * polygon, falls back to the perfect matching of all rays with least total
 * segment length. Throws MotifFailure(polygon_id) when no matching exists.
 */
inline PicMotif pic_motif(std::span<const Vec2> poly, std::span<const EdgeRays> angles, int polygon_id = -1) {
  const int n = static_cast<int>(poly.size());
  if (n < 3 || static_cast<int>(angles.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "pic_motif needs one angle pair per edge");
  }
  const auto rays = detail::pic_rays(poly, angles);
  const double eps = 1e-9 * std::max(1.0, detail::polygon_scale(poly));
  auto meet = [&](int a, int b) -> std::optional<Vec2> {
    if (a / 2 == b / 2) return std::nullopt;
    const auto hit = intersect_rays(rays[static_cast<std::size_t>(a)].origin, rays[static_cast<std::size_t>(a)].dir,
                                    rays[static_cast<std::size_t>(b)].origin, rays[static_cast<std::size_t>(b)].dir);
    if (!hit || !point_in_polygon(hit->point, poly, eps)) return std::nullopt;
    return hit->point;
  };

  PicMotif out;
  bool ok = true;
  for (int e = 0; e < n && ok; ++e) {
    const int a = 2 * e, b = 2 * ((e + 1) % n) + 1;
    const auto x = meet(a, b);
    if (!x) ok = false;
    else out.pairs.push_back({a, b, *x, false});
  }
  if (ok) return out;

  // Least-length perfect matching by dynamic programming over subsets.
  const int m = 2 * n;
  if (m > 20) throw MotifFailure(polygon_id);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<std::optional<Vec2>>> hits(static_cast<std::size_t>(m), std::vector<std::optional<Vec2>>(static_cast<std::size_t>(m)));
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) hits[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = meet(a, b);
  }
  auto cost = [&](int a, int b) {
    const auto& x = hits[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    return distance(rays[static_cast<std::size_t>(a)].origin, *x) + distance(rays[static_cast<std::size_t>(b)].origin, *x);
  };
  const std::size_t full = (std::size_t{1} << m) - 1;
  std::vector<double> best(full + 1, inf);
  std::vector<int> choice(full + 1, -1);
  best[full] = 0.0;
  for (std::size_t mask = full; mask-- > 0;) {
    int a = 0;
    while (mask & (std::size_t{1} << a)) ++a;
    for (int b = a + 1; b < m; ++b) {
      if (mask & (std::size_t{1} << b)) continue;
      if (!hits[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) continue;
      const std::size_t next = mask | (std::size_t{1} << a) | (std::size_t{1} << b);
      const double c = cost(a, b) + best[next];
      if (c < best[mask]) {
        best[mask] = c;
        choice[mask] = b;
      }
    }
  }
  if (!(best[0] < inf)) throw MotifFailure(polygon_id);
  out.pairs.clear();
  out.fallback = true;
  for (std::size_t mask = 0; mask != full;) {
    int a = 0;
    while (mask & (std::size_t{1} << a)) ++a;
    const int b = choice[mask];
    out.pairs.push_back({a, b, *hits[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], false});
    mask |= (std::size_t{1} << a) | (std::size_t{1} << b);
  }
  return out;
}

/// Same contact angle on both rays of every edge.
inline std::vector<EdgeRays> uniform_angles(std::size_t edges, double theta) {
  return std::vector<EdgeRays>(edges, EdgeRays{theta, theta});
}

/**
 * Rays on edge p -> q that continue the given neighbour segments straight
 * through the edge midpoint. Each segment must have one end at the midpoint;
 * the continuation leaning towards q becomes the forward ray. Returns
 * nullopt unless exactly two segments touch the midpoint.
 */
inline std::optional<EdgeRays> continuation_rays(Vec2 p, Vec2 q, std::span<const Segment> neighbour, double tol) {
  const Vec2 m = midpoint(p, q);
  const Vec2 d = normalized(q - p);
  std::vector<Vec2> dirs;
  for (const auto& s : neighbour) {
    if (distance(s.a, m) <= tol && distance(s.b, m) > tol) dirs.push_back(normalized(s.a - s.b));
    else if (distance(s.b, m) <= tol && distance(s.a, m) > tol) dirs.push_back(normalized(s.b - s.a));
  }
  if (dirs.size() != 2) return std::nullopt;
  if (dot(dirs[0], d) < dot(dirs[1], d)) std::swap(dirs[0], dirs[1]);
  EdgeRays rays{ccw_angle(d, dirs[0]), ccw_angle(dirs[1], -d)};
  if (!(rays.forward > 0.0 && rays.forward < kPi && rays.backward > 0.0 && rays.backward < kPi)) return std::nullopt;
  return rays;
}

/**
 * The crossing fix for a barrel hexagon. `o` and `o2` are the indices of the
 * two flank vertices (both incident edges shared with pentagons). If the V
 * meeting near o crosses the V meeting near o2, the four segments are
 * replaced by two straight segments joining opposite flank edge midpoints.
 * Returns true when the motif changed.
 */
inline bool fix_bowtie_hexagon(PicMotif& motif, std::span<const Vec2> hexagon, int o, int o2) {
  const int n = static_cast<int>(hexagon.size());
  auto v_rays = [&](int v) { return std::array<int, 2>{2 * ((v + n - 1) % n), 2 * v + 1}; };
  auto find = [&](std::array<int, 2> rays) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < motif.pairs.size(); ++i) {
      const auto& pr = motif.pairs[i];
      if (pr.straight) continue;
      if ((pr.first == rays[0] && pr.second == rays[1]) || (pr.first == rays[1] && pr.second == rays[0])) return i;
    }
    return std::nullopt;
  };
  const auto ra = v_rays(o), rb = v_rays(o2);
  const auto ia = find(ra), ib = find(rb);
  if (!ia || !ib) return false;
  const Vec2 xa = motif.pairs[*ia].meet, xb = motif.pairs[*ib].meet;
  bool overlap = false;
  for (int r1 : ra) {
    for (int r2 : rb) {
      overlap = overlap || segments_cross(ray_origin(hexagon, r1), xa, ray_origin(hexagon, r2), xb);
    }
  }
  if (!overlap) return false;
  std::vector<RayPair> pairs;
  for (std::size_t i = 0; i < motif.pairs.size(); ++i) {
    if (i != *ia && i != *ib) pairs.push_back(motif.pairs[i]);
  }
  // Backward ray of edge o pairs with backward ray of edge o2, forward ray
  // of the edge before o with the forward ray of the edge before o2.
  pairs.push_back({ra[1], rb[1], {}, true});
  pairs.push_back({ra[0], rb[0], {}, true});
  std::sort(pairs.begin(), pairs.end(), [](const RayPair& a, const RayPair& b) {
    return std::min(a.first, a.second) < std::min(b.first, b.second);
  });
  motif.pairs = std::move(pairs);
  return true;
}

}  // namespace rosette
