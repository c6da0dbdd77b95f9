#pragma once

// Delaunay triangulation of a small planar point set, producing a disk
// complex. A lexicographic sweep builds some triangulation of the convex
// hull, then Lawson flips make every interior edge locally Delaunay.
// Cocircular quads keep the diagonal that touches the lowest vertex id.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "rosette/complex.hpp"
#include "rosette/error.hpp"
#include "rosette/geometry.hpp"

namespace rosette {

namespace detail {

// > 0 when d lies strictly inside the circumcircle of the ccw triangle abc.
inline double incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double ad = adx * adx + ady * ady;
  const double bd = bdx * bdx + bdy * bdy;
  const double cd = cdx * cdx + cdy * cdy;
  return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

inline double incircle_tolerance(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  double m = 0.0;
  for (Vec2 p : {a, b, c}) m = std::max(m, norm(p - d));
  return 1e-10 * m * m * m * m;
}

}  // namespace detail

/// Uniform points in the unit square from a 64-bit Mersenne twister. The
/// bit-to-double conversion is done by hand so sequences are identical on
/// every standard library.
inline std::vector<Vec2> random_points(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Vec2> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = unit();
    const double y = unit();
    pts.push_back({x, y});
  }
  return pts;
}

/**
 * Delaunay triangulation of `points`. Vertex ids are 1-based input positions
 * and each vertex keeps its point as hint position. `seed` is unused by the
 * triangulation itself and only recorded for callers that generated the
 * points with random_points.
 *
 * Throws Error(DegenerateInput) for fewer than three points, duplicates or
 * an all-collinear set.
 */
inline Complex delaunay_from_points(std::span<const Vec2> points, std::uint64_t seed = 0) {
  (void)seed;
  const int n = static_cast<int>(points.size());
  if (n < 3) throw Error(ErrorCode::DegenerateInput, "need at least three points");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (points[a].x != points[b].x) return points[a].x < points[b].x;
    if (points[a].y != points[b].y) return points[a].y < points[b].y;
    return a < b;
  });
  for (int i = 1; i < n; ++i) {
    if (points[order[i]] == points[order[i - 1]]) {
      throw Error(ErrorCode::DegenerateInput, "duplicate point " + std::to_string(order[i] + 1));
    }
  }

  auto P = [&](int i) { return points[i]; };
  std::vector<Triangle> tris;  // indices into points, ccw

  // First point that is not collinear with the first two.
  int k = 2;
  while (k < n && std::abs(orient(P(order[0]), P(order[1]), P(order[k]))) <=
                      1e-14 * std::max(1.0, norm(P(order[k]) - P(order[0])))) {
    ++k;
  }
  if (k == n) throw Error(ErrorCode::DegenerateInput, "all points are collinear");

  // Fan from the collinear prefix to order[k]; hull kept as a ccw cycle.
  std::vector<int> hull;
  {
    const int apex = order[k];
    const bool left = orient(P(order[0]), P(order[1]), P(apex)) > 0.0;
    for (int i = 0; i + 1 < k; ++i) {
      const int a = order[i], b = order[i + 1];
      tris.push_back(left ? Triangle{a, b, apex} : Triangle{b, a, apex});
    }
    if (left) {
      for (int i = 0; i < k; ++i) hull.push_back(order[i]);
      hull.push_back(apex);
    } else {
      hull.push_back(apex);
      for (int i = k - 1; i >= 0; --i) hull.push_back(order[i]);
      std::rotate(hull.begin(), hull.begin() + 1, hull.end());
      // hull: prefix reversed then apex, still ccw because apex is on the right
    }
  }
  for (int idx = k + 1; idx < n; ++idx) {
    const int p = order[idx];
    const int h = static_cast<int>(hull.size());
    std::vector<bool> visible(h);
    for (int i = 0; i < h; ++i) visible[i] = orient(P(hull[i]), P(hull[(i + 1) % h]), P(p)) < 0.0;
    // Find the start of the visible chain.
    int first = -1;
    for (int i = 0; i < h; ++i) {
      if (visible[i] && !visible[(i + h - 1) % h]) {
        first = i;
        break;
      }
    }
    if (first < 0) throw Error(ErrorCode::DegenerateInput, "sweep found no visible hull edge");
    int last = first;
    while (visible[(last + 1) % h]) last = (last + 1) % h;
    std::vector<int> next_hull;
    for (int i = first;; i = (i + 1) % h) {
      tris.push_back({hull[(i + 1) % h], hull[i], p});
      if (i == last) break;
    }
    // Keep hull[first] ... (skip interior chain) ... hull[last + 1], insert p.
    for (int i = (last + 1) % h;; i = (i + 1) % h) {
      next_hull.push_back(hull[i]);
      if (i == first) break;
    }
    next_hull.push_back(p);
    hull = std::move(next_hull);
  }

  // Lawson flips.
  std::map<std::pair<int, int>, std::vector<int>> edge_tris;
  auto index_triangle = [&](int t) {
    for (int e = 0; e < 3; ++e) edge_tris[edge_key(tris[t][e], tris[t][(e + 1) % 3])].push_back(t);
  };
  auto unindex_triangle = [&](int t) {
    for (int e = 0; e < 3; ++e) {
      auto& v = edge_tris[edge_key(tris[t][e], tris[t][(e + 1) % 3])];
      v.erase(std::find(v.begin(), v.end(), t));
    }
  };
  for (int t = 0; t < static_cast<int>(tris.size()); ++t) index_triangle(t);
  auto opposite = [&](int t, int a, int b) {
    for (int v : tris[t]) {
      if (v != a && v != b) return v;
    }
    return -1;
  };

  std::vector<std::pair<int, int>> stack;
  for (const auto& [e, ts] : edge_tris) stack.push_back(e);
  std::size_t guard = 0;
  const std::size_t guard_limit = 100 * tris.size() * tris.size() + 1000;
  while (!stack.empty() && guard++ < guard_limit) {
    const auto e = stack.back();
    stack.pop_back();
    const auto it = edge_tris.find(e);
    if (it == edge_tris.end() || it->second.size() != 2) continue;
    const int t0 = it->second[0], t1 = it->second[1];
    const int a = e.first, b = e.second;
    const int c = opposite(t0, a, b);
    const int d = opposite(t1, a, b);
    // Orient (x, y, c) ccw for the incircle test.
    Vec2 pa = P(a), pb = P(b);
    if (orient(pa, pb, P(c)) < 0.0) std::swap(pa, pb);
    const double in = detail::incircle(pa, pb, P(c), P(d));
    const double tol = detail::incircle_tolerance(pa, pb, P(c), P(d));
    bool flip = in > tol;
    if (!flip && in >= -tol) {
      // Cocircular: keep the diagonal containing the lowest id.
      flip = std::min(c, d) < std::min(a, b);
    }
    if (!flip) continue;
    // The quad must be convex for the flip to be valid.
    if (!(orient(P(c), P(d), P(a)) * orient(P(c), P(d), P(b)) < 0.0)) continue;
    unindex_triangle(t0);
    unindex_triangle(t1);
    Triangle n0{c, d, a}, n1{d, c, b};
    if (orient(P(n0[0]), P(n0[1]), P(n0[2])) < 0.0) std::swap(n0[0], n0[1]);
    if (orient(P(n1[0]), P(n1[1]), P(n1[2])) < 0.0) std::swap(n1[0], n1[1]);
    tris[t0] = n0;
    tris[t1] = n1;
    index_triangle(t0);
    index_triangle(t1);
    edge_tris.erase(e);
    for (auto q : {edge_key(a, c), edge_key(c, b), edge_key(b, d), edge_key(d, a)}) stack.push_back(q);
  }

  Complex out;
  out.topology = Topology::Disk;
  for (int i = 0; i < n; ++i) out.vertices.push_back({i + 1, points[i]});
  for (const Triangle& t : tris) out.triangles.push_back({t[0] + 1, t[1] + 1, t[2] + 1});
  return canonical(std::move(out));
}

}  // namespace rosette
