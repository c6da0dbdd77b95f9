#pragma once

// Continuous symmetry measure against the regular n-gon, and the tau sweep
// that scores a patch by the mean CSM of its filler pentagons.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "rosette/error.hpp"
#include "rosette/geometry.hpp"
#include "rosette/packing.hpp"
#include "rosette/patch.hpp"

namespace rosette {

/**
 * Centre the points on their centroid and scale to unit mean squared norm.
 * Then for every cyclic relabelling and both orientations fold the points
 * onto the first one by rotating point i by -2pi i/n, average, unfold: that
 * is the closest regular n-gon. CSM is the smallest mean squared distance.
 */
inline double csm(std::span<const Vec2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) throw Error(ErrorCode::DegeneratePolygon, "CSM needs at least three vertices");
  const Vec2 c = centroid(polygon);
  double spread = 0.0;
  for (Vec2 p : polygon) spread += dot(p - c, p - c);
  spread /= static_cast<double>(n);
  if (!(spread > 1e-300)) throw Error(ErrorCode::DegeneratePolygon, "polygon has zero spread");
  const double scale = 1.0 / std::sqrt(spread);
  std::vector<Vec2> p;
  for (Vec2 q : polygon) p.push_back((q - c) * scale);

  std::vector<Vec2> unit(n);
  for (std::size_t i = 0; i < n; ++i) unit[i] = polar(1.0, kTwoPi * static_cast<double>(i) / static_cast<double>(n));
  auto rot = [](Vec2 v, Vec2 u, double sign) { return Vec2{u.x * v.x - sign * u.y * v.y, sign * u.y * v.x + u.x * v.y}; };

  double best = std::numeric_limits<double>::infinity();
  for (double orientation : {1.0, -1.0}) {
    for (std::size_t shift = 0; shift < n; ++shift) {
      Vec2 folded;
      for (std::size_t i = 0; i < n; ++i) folded += rot(p[(i + shift) % n], unit[i], -orientation);
      folded = folded / static_cast<double>(n);
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const Vec2 d = p[(i + shift) % n] - rot(folded, unit[i], orientation);
        sum += dot(d, d);
      }
      best = std::min(best, sum / static_cast<double>(n));
    }
  }
  return best;
}

/// Mean CSM over the filler pentagons of a patch.
inline double mean_filler_csm(const Patch& patch) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < patch.polygons.size(); ++i) {
    if (patch.polygons[i].role != PolygonRole::FillerPentagon) continue;
    const auto pts = patch.coords(static_cast<int>(i));
    sum += csm(pts);
    ++count;
  }
  if (count == 0) throw Error(ErrorCode::DegeneratePolygon, "patch has no filler pentagons");
  return sum / static_cast<double>(count);
}

struct TauRange {
  double from = 0.5;
  double to = 0.95;
  double step = 0.005;
};

struct TauSweep {
  double best_tau = 0.0;
  double best_error = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> curve;  // (tau, mean filler CSM); +inf where construction failed
};

inline std::vector<double> tau_values(const TauRange& range) {
  if (!(range.step > 0.0) || range.to < range.from) throw Error(ErrorCode::InvalidArgument, "bad tau range");
  std::vector<double> out;
  const long count = std::lround(std::floor((range.to - range.from) / range.step + 1e-9));
  for (long i = 0; i <= count; ++i) out.push_back(range.from + static_cast<double>(i) * range.step);
  return out;
}

inline TauSweep optimize_tau(const Packing& packing, const Complex& complex, const TauRange& range = {},
                             TauMode mode = TauMode::Scale) {
  TauSweep sweep;
  for (double tau : tau_values(range)) {
    double err = std::numeric_limits<double>::infinity();
    if (tau > 0.0 && tau < 1.0) {
      try {
        err = mean_filler_csm(build_patch(packing, complex, {tau, mode}));
      } catch (const Error&) {
        err = std::numeric_limits<double>::infinity();
      }
    }
    sweep.curve.push_back({tau, err});
    if (err < sweep.best_error) {
      sweep.best_error = err;
      sweep.best_tau = tau;
    }
  }
  return sweep;
}

}  // namespace rosette
