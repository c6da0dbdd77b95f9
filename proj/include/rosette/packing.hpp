#pragma once

/**
 * Circle packings realizing the tangency graph of a complex.
 *
 * Radii come from a Collins-Stephenson style iteration: every interior
 * vertex in ascending id order has its radius replaced by the exact root of
 * angle_sum(r) = 2pi, holding its neighbours fixed. Centres are then laid
 * out triangle by triangle from the lowest-id interior vertex.
 *
 * On a torus all vertices are interior, the radii are normalised so the
 * largest is 1, and the layout recovers the two lattice vectors from the
 * wrap-tagged edges.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "rosette/complex.hpp"
#include "rosette/error.hpp"
#include "rosette/geometry.hpp"

namespace rosette {

struct Circle {
  Vec2 center;
  double radius = 0.0;

  friend bool operator==(const Circle&, const Circle&) = default;
};

struct Tangency {
  int a = 0;
  int b = 0;
  /// Lattice translation of b's copy touching a (torus only).
  LatticeOffset offset;

  friend bool operator==(const Tangency&, const Tangency&) = default;
};

using Lattice = std::array<Vec2, 2>;

inline Vec2 lattice_shift(const std::optional<Lattice>& lattice, LatticeOffset off) {
  if (!lattice || off.is_zero()) return {};
  return (*lattice)[0] * off.x + (*lattice)[1] * off.y;
}

struct Packing {
  Topology topology = Topology::Disk;
  std::map<int, Circle> circles;
  std::vector<Tangency> tangencies;
  std::optional<Lattice> lattice;

  /// Centre of the copy of circle `id` translated by `off`.
  Vec2 center(int id, LatticeOffset off = {}) const {
    return circles.at(id).center + lattice_shift(lattice, off);
  }

  friend bool operator==(const Packing&, const Packing&) = default;
};

// ---------------------------------------------------------------------------
// Kernel

/**
 * Radius of a boundary circle of degree n: the circle that 2n - 2 unit
 * circles would surround exactly, r = (1 - sin phi) / sin phi with
 * phi = pi / (2n - 2).
 */
inline double boundary_radius(int n) {
  if (n <= 2) {
    throw Error(ErrorCode::DegenerateBoundaryVertex,
                "boundary degree " + std::to_string(n) + " gives a zero radius");
  }
  const double phi = kPi / (2.0 * n - 2.0);
  const double s = std::sin(phi);
  return (1.0 - s) / s;
}

/// Angle at the centre of a circle of radius r in the triangle formed with
/// tangent neighbours of radii a and b. Uses the half-angle form
/// sin(beta/2) = sqrt(ab / ((r+a)(r+b))), which equals the law-of-cosines
/// angle and keeps full precision for thin triangles.
inline double corner_angle(double r, double a, double b) {
  const double u = (a * b) / ((r + a) * (r + b));
  return 2.0 * std::asin(std::sqrt(std::clamp(u, 0.0, 1.0)));
}

// d(corner_angle)/dr.
inline double corner_angle_derivative(double r, double a, double b) {
  const double u = (a * b) / ((r + a) * (r + b));
  const double su = std::sqrt(u);
  const double c = std::sqrt(std::max(1.0 - u, 1e-300));
  return -(su / c) * (1.0 / (r + a) + 1.0 / (r + b));
}

/// Sum of corner angles over consecutive neighbour pairs. `closed` adds the
/// wrap-around pair (interior vertex); boundary fans leave it out.
inline double angle_sum(double r, std::span<const double> neighbor_radii, bool closed = true) {
  const std::size_t k = neighbor_radii.size();
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "angle_sum needs at least two neighbours");
  double sum = 0.0;
  const std::size_t pairs = closed ? k : k - 1;
  for (std::size_t i = 0; i < pairs; ++i) sum += corner_angle(r, neighbor_radii[i], neighbor_radii[(i + 1) % k]);
  return sum;
}

inline double angle_sum_derivative(double r, std::span<const double> neighbor_radii, bool closed = true) {
  const std::size_t k = neighbor_radii.size();
  double sum = 0.0;
  const std::size_t pairs = closed ? k : k - 1;
  for (std::size_t i = 0; i < pairs; ++i) {
    sum += corner_angle_derivative(r, neighbor_radii[i], neighbor_radii[(i + 1) % k]);
  }
  return sum;
}

/// Root of angle_sum(r) = target for a closed flower (safeguarded Newton,
/// bisection fallback). angle_sum is strictly decreasing from k*pi to 0.
inline double solve_flower_radius(double r0, std::span<const double> neighbor_radii, double target = kTwoPi) {
  auto f = [&](double r) { return angle_sum(r, neighbor_radii) - target; };
  double lo = r0, hi = r0;
  double flo = f(lo);
  while (flo <= 0.0) {
    hi = lo;
    lo *= 0.5;
    flo = f(lo);
  }
  double fhi = f(hi);
  while (fhi >= 0.0) {
    lo = hi;
    hi *= 2.0;
    fhi = f(hi);
  }
  double r = std::clamp(r0, lo, hi);
  for (int it = 0; it < 200; ++it) {
    const double fr = f(r);
    if (fr == 0.0) return r;
    if (fr > 0.0) lo = r;
    else hi = r;
    const double d = angle_sum_derivative(r, neighbor_radii);
    double next = d < 0.0 ? r - fr / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) <= 4.0 * std::numeric_limits<double>::epsilon() * r) return next;
    r = next;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Radii

struct DegreeFormula {};
struct ExplicitRadii {
  std::map<int, double> radii;
};
using BoundaryMode = std::variant<DegreeFormula, ExplicitRadii>;

struct SolverConfig {
  double residual_tolerance = 1e-10;
  int max_sweeps = 50000;
  BoundaryMode boundary_mode = DegreeFormula{};
};

struct SolveResult {
  std::map<int, double> radii;
  int sweeps = 0;
  double worst_residual = 0.0;
  /// Worst interior residual before each sweep, ending with the final one.
  std::vector<double> residual_history;
};

namespace detail {

inline double boundary_radius_clamped(int degree) { return boundary_radius(std::max(degree, 3)); }

}  // namespace detail

/**
 * Solves for radii. Disk: boundary radii fixed by `boundary_mode` (degree-2
 * boundary vertices use the degree-3 radius), interior vertices iterated.
 * Torus: every vertex iterated, max radius normalised to 1 after each sweep.
 */
inline SolveResult solve_radii(const Complex& complex, const SolverConfig& config = {}) {
  if (!(config.residual_tolerance > 0.0) || config.max_sweeps < 1) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must be > 0 and max_sweeps >= 1");
  }
  const Mesh mesh(complex);
  const bool torus = complex.topology == Topology::Torus;
  SolveResult result;
  auto& radii = result.radii;
  for (int v : mesh.ids()) radii[v] = 1.0;

  std::vector<int> free;
  for (int v : mesh.ids()) {
    if (torus || mesh.is_interior(v)) {
      free.push_back(v);
    } else if (const auto* explicit_radii = std::get_if<ExplicitRadii>(&config.boundary_mode)) {
      auto it = explicit_radii->radii.find(v);
      if (it == explicit_radii->radii.end() || !(it->second > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "no positive radius given for boundary vertex " + std::to_string(v));
      }
      radii[v] = it->second;
    } else {
      radii[v] = detail::boundary_radius_clamped(mesh.degree(v));
    }
  }
  if (free.empty()) throw NothingToSolve(radii);

  std::map<int, std::vector<int>> fans;
  for (int v : free) fans[v] = mesh.neighbors(v);
  std::vector<double> scratch;
  auto gather = [&](int v) {
    scratch.clear();
    for (int u : fans[v]) scratch.push_back(radii[u]);
  };
  auto worst = [&] {
    double w = 0.0;
    for (int v : free) {
      gather(v);
      w = std::max(w, std::abs(angle_sum(radii[v], scratch) - kTwoPi));
    }
    return w;
  };

  while (true) {
    result.worst_residual = worst();
    result.residual_history.push_back(result.worst_residual);
    if (result.worst_residual <= config.residual_tolerance) break;
    if (result.sweeps >= config.max_sweeps) throw NonConvergence(result.worst_residual, result.sweeps);
    for (int v : free) {
      gather(v);
      radii[v] = solve_flower_radius(radii[v], scratch);
    }
    if (torus) {
      double m = 0.0;
      for (const auto& [v, r] : radii) m = std::max(m, r);
      for (auto& [v, r] : radii) r /= m;
    }
    ++result.sweeps;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Layout

/**
 * Places circle centres. Root: lowest-id interior vertex at the origin, its
 * lowest-id neighbour on the +x axis; every further centre comes from the
 * triangle it shares with two placed circles. Throws LayoutInconsistency if
 * any tangency misses by more than 1e-6 relative.
 */
inline Packing layout(const Complex& complex, const std::map<int, double>& radii) {
  const Mesh mesh(complex);
  const bool torus = complex.topology == Topology::Torus;
  const auto& tris = mesh.triangles();
  if (tris.empty()) throw Error(ErrorCode::InvalidArgument, "complex has no triangles");
  auto R = [&](int v) { return radii.at(v); };

  std::map<std::pair<int, int>, int> directed;  // a->b to triangle index
  for (std::size_t t = 0; t < tris.size(); ++t) {
    for (int k = 0; k < 3; ++k) directed[{tris[t][k], tris[t][(k + 1) % 3]}] = static_cast<int>(t);
  }

  const auto interior = mesh.interior_vertices();
  const int root = interior.empty() ? mesh.ids().front() : interior.front();
  const auto& root_nbrs = mesh.neighbors(root);
  const int first_nbr = *std::min_element(root_nbrs.begin(), root_nbrs.end());

  struct Corner {
    Vec2 pos;
    LatticeOffset off;
  };
  std::vector<std::array<Corner, 3>> placed(tris.size());
  std::vector<bool> done(tris.size(), false);
  std::map<int, Corner> canon;

  // Position of c given the ccw edge a->b of triangle (a, b, c).
  auto third = [&](int a, Vec2 pa, int b, Vec2 pb, int c) {
    const double angle = corner_angle(R(a), R(b), R(c));
    return pa + rotate(normalized(pb - pa), angle) * (R(a) + R(c));
  };
  auto place = [&](int t, int a, Corner ca, int b, Corner cb) {
    const Triangle& tri = tris[t];
    int c = -1;
    for (int v : tri) {
      if (v != a && v != b) c = v;
    }
    Corner cc{third(a, ca.pos, b, cb.pos, c), cb.off + mesh.wrap(b, c)};
    for (int k = 0; k < 3; ++k) {
      placed[t][k] = tri[k] == a ? ca : tri[k] == b ? cb : cc;
    }
    done[t] = true;
  };

  std::deque<int> queue;
  {
    const Corner c_root{{0.0, 0.0}, {}};
    auto it = directed.find({root, first_nbr});
    if (it != directed.end()) {
      const Corner c_nbr{{R(root) + R(first_nbr), 0.0}, mesh.wrap(root, first_nbr)};
      place(it->second, root, c_root, first_nbr, c_nbr);
      queue.push_back(it->second);
    } else {
      // Only first_nbr->root exists: the triangle lies below the axis.
      const int t = directed.at({first_nbr, root});
      const Corner c_nbr{{R(root) + R(first_nbr), 0.0}, mesh.wrap(root, first_nbr)};
      place(t, first_nbr, c_nbr, root, c_root);
      queue.push_back(t);
    }
  }

  double worst_mismatch = 0.0;
  std::vector<std::pair<LatticeOffset, Vec2>> holonomy;
  auto note = [&](int v, const Corner& c) {
    auto [it, inserted] = canon.emplace(v, c);
    if (inserted) return;
    const LatticeOffset d = c.off - it->second.off;
    const Vec2 dp = c.pos - it->second.pos;
    if (d.is_zero()) {
      worst_mismatch = std::max(worst_mismatch, norm(dp) / R(v));
    } else {
      holonomy.push_back({d, dp});
    }
  };

  while (!queue.empty()) {
    const int t = queue.front();
    queue.pop_front();
    for (int k = 0; k < 3; ++k) note(tris[t][k], placed[t][k]);
    for (int k = 0; k < 3; ++k) {
      const int a = tris[t][k];
      const int b = tris[t][(k + 1) % 3];
      auto it = directed.find({b, a});
      if (it == directed.end() || done[it->second]) continue;
      place(it->second, b, placed[t][(k + 1) % 3], a, placed[t][k]);
      queue.push_back(it->second);
    }
  }
  if (worst_mismatch > 1e-6) {
    throw Error(ErrorCode::LayoutInconsistency,
                "placements of the same circle disagree by " + std::to_string(worst_mismatch) + " radii");
  }

  Packing out;
  out.topology = complex.topology;
  if (torus) {
    // Least squares for L1, L2 from dp = dx * L1 + dy * L2.
    double a11 = 0, a12 = 0, a22 = 0;
    Vec2 b1, b2;
    for (const auto& [d, dp] : holonomy) {
      a11 += d.x * d.x;
      a12 += d.x * d.y;
      a22 += d.y * d.y;
      b1 += dp * d.x;
      b2 += dp * d.y;
    }
    const double det = a11 * a22 - a12 * a12;
    if (std::abs(det) < 1e-12) {
      throw Error(ErrorCode::LayoutInconsistency, "wraps do not determine two lattice vectors");
    }
    const Vec2 l1 = (b1 * a22 - b2 * a12) / det;
    const Vec2 l2 = (b2 * a11 - b1 * a12) / det;
    out.lattice = Lattice{l1, l2};
  }
  for (const auto& [v, c] : canon) out.circles[v] = {c.pos - lattice_shift(out.lattice, c.off), R(v)};
  for (const auto& [a, b] : mesh.edges()) out.tangencies.push_back({a, b, mesh.wrap(a, b)});

  for (const auto& t : out.tangencies) {
    const double gap = distance(out.center(t.a), out.center(t.b, t.offset));
    const double want = R(t.a) + R(t.b);
    if (std::abs(gap - want) > 1e-6 * want) {
      throw Error(ErrorCode::LayoutInconsistency,
                  "tangency " + std::to_string(t.a) + "-" + std::to_string(t.b) + " off by " +
                      std::to_string(std::abs(gap - want) / want) + " relative");
    }
  }
  return out;
}

/// Largest relative tangency defect | |ci - cj| - (ri + rj) | / (ri + rj).
inline double max_tangency_defect(const Packing& p) {
  double worst = 0.0;
  for (const auto& t : p.tangencies) {
    const double want = p.circles.at(t.a).radius + p.circles.at(t.b).radius;
    worst = std::max(worst, std::abs(distance(p.center(t.a), p.center(t.b, t.offset)) - want) / want);
  }
  return worst;
}

/// Smallest |ci - cj| / (ri + rj) over non-adjacent pairs (>= 1 means no
/// overlap). Disk packings only; brute force over all pairs.
inline double min_separation_ratio(const Packing& p) {
  std::set<std::pair<int, int>> adjacent;
  for (const auto& t : p.tangencies) adjacent.insert(edge_key(t.a, t.b));
  double worst = std::numeric_limits<double>::infinity();
  for (auto i = p.circles.begin(); i != p.circles.end(); ++i) {
    for (auto j = std::next(i); j != p.circles.end(); ++j) {
      if (adjacent.count({i->first, j->first})) continue;
      const double ratio =
          distance(i->second.center, j->second.center) / (i->second.radius + j->second.radius);
      worst = std::min(worst, ratio);
    }
  }
  return worst;
}

/// solve_radii followed by layout.
inline Packing compute_packing(const Complex& complex, const SolverConfig& config = {}) {
  return layout(complex, solve_radii(complex, config).radii);
}

// ---------------------------------------------------------------------------
// Interior selection

/**
 * Vertices farther than `trim_depth` edges from every boundary vertex,
 * restricted to the largest connected component they induce (ties go to the
 * component holding the smallest id). Throws EmptySelection when nothing is
 * left.
 */
inline std::set<int> select_interior(const Packing& packing, const Complex& complex, int trim_depth = 1) {
  (void)packing;
  if (complex.topology != Topology::Disk) {
    throw Error(ErrorCode::InvalidArgument, "select_interior applies to disk complexes");
  }
  if (trim_depth < 0) throw Error(ErrorCode::InvalidArgument, "trim_depth must be >= 0");
  const Mesh mesh(complex);
  std::map<int, int> dist;
  std::deque<int> queue;
  for (int v : mesh.boundary_vertices()) {
    dist[v] = 0;
    queue.push_back(v);
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int u : mesh.neighbors(v)) {
      if (!dist.count(u)) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  std::set<int> candidates;
  for (int v : mesh.ids()) {
    if (dist.count(v) && dist[v] > trim_depth) candidates.insert(v);
  }
  std::set<int> best;
  std::set<int> seen;
  for (int s : candidates) {
    if (seen.count(s)) continue;
    std::set<int> comp{s};
    std::vector<int> stack{s};
    seen.insert(s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int u : mesh.neighbors(v)) {
        if (candidates.count(u) && seen.insert(u).second) {
          comp.insert(u);
          stack.push_back(u);
        }
      }
    }
    if (comp.size() > best.size()) best = std::move(comp);
  }
  if (best.empty()) {
    throw Error(ErrorCode::EmptySelection, "no circle lies deeper than trim depth " + std::to_string(trim_depth));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Torus unrolling

struct StampedPacking {
  Packing packing;  // disk-topology copy set, tangencies lifted
  /// Stamped id -> (original id, lattice copy).
  std::map<int, std::pair<int, LatticeOffset>> origin;
};

/**
 * Stamps a torus packing over the lattice copies in `copies`: every
 * tangency of every copy is emitted, including the ones crossing seams into
 * a neighbouring copy that is itself stamped.
 */
inline StampedPacking stamp_packing(const Packing& torus, std::span<const LatticeOffset> copies) {
  if (!torus.lattice) throw Error(ErrorCode::InvalidArgument, "packing has no lattice");
  StampedPacking out;
  std::map<std::pair<int, LatticeOffset>, int> ids;
  auto id_of = [&](int v, LatticeOffset off) {
    auto [it, inserted] = ids.emplace(std::pair{v, off}, static_cast<int>(ids.size()) + 1);
    if (inserted) {
      out.origin[it->second] = {v, off};
      out.packing.circles[it->second] = {torus.center(v, off), torus.circles.at(v).radius};
    }
    return it->second;
  };
  for (LatticeOffset c : copies) {
    for (const auto& [v, circle] : torus.circles) id_of(v, c);
  }
  const std::set<LatticeOffset> copy_set(copies.begin(), copies.end());
  for (LatticeOffset c : copies) {
    for (const auto& t : torus.tangencies) {
      if (!copy_set.count(c + t.offset)) continue;
      out.packing.tangencies.push_back({id_of(t.a, c), id_of(t.b, c + t.offset), {}});
    }
  }
  return out;
}

}  // namespace rosette
