#pragma once

/**
 * Patch construction: a tau-scaled cyclic polygon inside every circle and
 * three filler pentagons in every triangle of tangent circles, followed by
 * the square and bowtie gadget surgery.
 *
 * Every point of the patch is generated once under a symbolic key (a
 * tangency of circle v with u, an arc point of v, an incentre, a gadget
 * centre) and polygons refer to points by index. Shared edges therefore
 * match bit for bit. On a torus each polygon vertex also carries the lattice
 * copy it belongs to; coordinates are point + offset * lattice.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "rosette/complex.hpp"
#include "rosette/error.hpp"
#include "rosette/geometry.hpp"
#include "rosette/packing.hpp"

namespace rosette {

enum class TauMode { Scale, Offset };

struct PatchParams {
  double tau = 0.8;
  TauMode tau_mode = TauMode::Scale;

  friend bool operator==(const PatchParams&, const PatchParams&) = default;
};

enum class PolygonRole { Cyclic, FillerPentagon, GadgetPentagon, BarrelHexagon };

inline const char* to_string(PolygonRole role) {
  switch (role) {
    case PolygonRole::Cyclic: return "cyclic";
    case PolygonRole::FillerPentagon: return "filler";
    case PolygonRole::GadgetPentagon: return "gadget-pentagon";
    case PolygonRole::BarrelHexagon: return "barrel-hexagon";
  }
  return "unknown";
}

struct PatchVertex {
  int point = 0;
  LatticeOffset offset;

  friend bool operator==(const PatchVertex&, const PatchVertex&) = default;
};

/// Neighbour across one polygon edge. `shift` translates the neighbour's
/// coordinates onto this polygon's copy (always zero on a disk).
struct EdgeLink {
  int polygon = -1;
  int edge = -1;
  LatticeOffset shift;

  bool boundary() const { return polygon < 0; }
  friend bool operator==(const EdgeLink&, const EdgeLink&) = default;
};

struct PatchPolygon {
  PolygonRole role = PolygonRole::Cyclic;
  int circle = -1;           // Cyclic only
  int triangle = -1;         // fillers: index into the canonical triangle list
  int gadget = -1;           // gadget polygons
  std::vector<int> circles;  // circles whose retention decides this polygon's
  std::vector<PatchVertex> vertices;
  std::vector<EdgeLink> links;  // links[i] borders vertices[i] -> vertices[i+1]

  friend bool operator==(const PatchPolygon&, const PatchPolygon&) = default;
};

struct Patch {
  Topology topology = Topology::Disk;
  std::optional<Lattice> lattice;
  PatchParams params;
  std::vector<Vec2> points;
  std::vector<PatchPolygon> polygons;
  std::map<int, int> cyclic_of;  // circle id -> polygon index

  Vec2 vertex(const PatchVertex& v) const { return points[static_cast<std::size_t>(v.point)] + lattice_shift(lattice, v.offset); }

  std::vector<Vec2> coords(int polygon) const {
    std::vector<Vec2> out;
    for (const auto& v : polygons[static_cast<std::size_t>(polygon)].vertices) out.push_back(vertex(v));
    return out;
  }

  friend bool operator==(const Patch&, const Patch&) = default;
};

// ---------------------------------------------------------------------------
// Standalone constructions

/// Point at `fraction` of the counterclockwise arc from direction u0 to u1
/// on the circle (center, radius).
inline Vec2 arc_point(Vec2 center, double radius, Vec2 u0, Vec2 u1, double fraction) {
  double sweep = ccw_angle(u0, u1);
  if (sweep == 0.0) sweep = kTwoPi;
  return center + rotate(normalized(u0), sweep * fraction) * radius;
}

/**
 * Cyclic polygon of a circle from its counterclockwise tangency points:
 * each tangency point followed by the midpoint of the arc to the next one
 * (or its two trisection points when the arc index is in `splits`), all
 * scaled about the centre by tau.
 */
inline std::vector<Vec2> cyclic_polygon(const Circle& circle, std::span<const Vec2> tangency_points, double tau,
                                        const std::set<int>& splits = {}) {
  const int k = static_cast<int>(tangency_points.size());
  if (k < 3) throw Error(ErrorCode::TooFewNeighbors, "a cyclic polygon needs at least three tangency points");
  const double R = tau * circle.radius;
  std::vector<Vec2> out;
  for (int i = 0; i < k; ++i) {
    const Vec2 u0 = tangency_points[static_cast<std::size_t>(i)] - circle.center;
    const Vec2 u1 = tangency_points[static_cast<std::size_t>((i + 1) % k)] - circle.center;
    out.push_back(circle.center + normalized(u0) * R);
    if (splits.count(i)) {
      out.push_back(arc_point(circle.center, R, u0, u1, 1.0 / 3.0));
      out.push_back(arc_point(circle.center, R, u0, u1, 2.0 / 3.0));
    } else {
      out.push_back(arc_point(circle.center, R, u0, u1, 0.5));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Patch builder

namespace detail {

enum class PointKind { Tangency, ArcMid, Trisect, Incentre, GadgetCentre };

class PatchBuilder {
 public:
  PatchBuilder(const Packing& packing, const Complex& complex, const PatchParams& params)
      : packing_(packing), mesh_(complex), params_(params) {
    if (!(params.tau > 0.0 && params.tau < 1.0)) throw Error(ErrorCode::InvalidArgument, "tau must lie in (0, 1)");
    patch_.topology = packing.topology;
    patch_.lattice = packing.lattice;
    patch_.params = params;
    double sum = 0.0;
    for (const auto& [v, c] : packing.circles) sum += c.radius;
    mean_radius_ = sum / static_cast<double>(packing.circles.size());
    for (const auto& g : complex.gadgets) gadgets_.push_back(g);
  }

  Patch build() {
    for (int v : mesh_.ids()) {
      if (!mesh_.is_gadget_center(v)) add_cyclic(v);
    }
    const auto& tris = mesh_.triangles();
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (std::none_of(tris[t].begin(), tris[t].end(), [&](int v) { return mesh_.is_gadget_center(v); })) {
        add_fillers(static_cast<int>(t));
      }
    }
    for (std::size_t g = 0; g < gadgets_.size(); ++g) {
      if (gadgets_[g].kind == GadgetKind::Square) add_square(static_cast<int>(g));
      else add_bowtie(static_cast<int>(g));
    }
    link_edges();
    return std::move(patch_);
  }

 private:
  using Key = std::tuple<PointKind, int, int, int>;

  Vec2 center_from(int v, int u) const { return packing_.center(u, mesh_.wrap(v, u)); }
  Vec2 direction(int v, int u) const { return center_from(v, u) - packing_.circles.at(v).center; }

  double scaled_radius(int v) const {
    const double r = packing_.circles.at(v).radius;
    if (params_.tau_mode == TauMode::Scale) return params_.tau * r;
    const double inset = (1.0 - params_.tau) * mean_radius_;
    if (inset >= r) {
      throw Error(ErrorCode::DegeneratePolygon, "offset " + std::to_string(inset) + " swallows circle " + std::to_string(v));
    }
    return r - inset;
  }

  int point(const Key& key, Vec2 p) {
    auto [it, inserted] = index_.emplace(key, static_cast<int>(patch_.points.size()));
    if (inserted) patch_.points.push_back(p);
    return it->second;
  }

  int tangency(int v, int u) {
    const Circle& c = packing_.circles.at(v);
    return point({PointKind::Tangency, v, u, 0}, c.center + normalized(direction(v, u)) * scaled_radius(v));
  }
  int arc(int v, int from, int to, PointKind kind, int which, double fraction) {
    const Circle& c = packing_.circles.at(v);
    return point({kind, v, from, which},
                 arc_point(c.center, scaled_radius(v), direction(v, from), direction(v, to), fraction));
  }

  void add_cyclic(int v) {
    const auto& nbrs = mesh_.neighbors(v);
    const bool boundary = mesh_.is_boundary(v);
    std::vector<int> real;
    for (int u : nbrs) {
      if (!mesh_.is_gadget_center(u)) real.push_back(u);
    }
    if (real.size() < (boundary ? 2u : 3u)) {
      throw Error(ErrorCode::TooFewNeighbors, "circle " + std::to_string(v) + " has " +
                                                  std::to_string(real.size()) + " tangent neighbours");
    }
    PatchPolygon poly;
    poly.role = PolygonRole::Cyclic;
    poly.circle = v;
    poly.circles = {v};
    const std::size_t n = nbrs.size();
    // Walk real neighbour to real neighbour, collecting removed ones between.
    std::size_t start = 0;
    while (mesh_.is_gadget_center(nbrs[start])) ++start;
    for (std::size_t step = 0; step < n; ++step) {
      const std::size_t i = (start + step) % n;
      const int r0 = nbrs[i];
      if (mesh_.is_gadget_center(r0)) continue;
      poly.vertices.push_back({tangency(v, r0), {}});
      if (boundary && i == n - 1) {
        // Outer arc back to the first neighbour.
        poly.vertices.push_back({arc(v, r0, nbrs[0], PointKind::ArcMid, 0, 0.5), {}});
        break;
      }
      std::vector<int> removed;
      std::size_t j = (i + 1) % n;
      while (mesh_.is_gadget_center(nbrs[j])) {
        removed.push_back(nbrs[j]);
        j = (j + 1) % n;
      }
      const int r1 = nbrs[j];
      if (removed.empty()) {
        poly.vertices.push_back({arc(v, r0, r1, PointKind::ArcMid, 0, 0.5), {}});
      } else if (removed.size() == 1) {
        poly.vertices.push_back({tangency(v, removed[0]), {}});
      } else if (removed.size() == 2) {
        poly.vertices.push_back({arc(v, r0, r1, PointKind::Trisect, 1, 1.0 / 3.0), {}});
        poly.vertices.push_back({arc(v, r0, r1, PointKind::Trisect, 2, 2.0 / 3.0), {}});
      } else {
        throw Error(ErrorCode::GadgetGeometryError,
                    "circle " + std::to_string(v) + " borders " + std::to_string(removed.size()) +
                        " removed circles in a row");
      }
    }
    patch_.cyclic_of[v] = static_cast<int>(patch_.polygons.size());
    push(std::move(poly));
  }

  void add_fillers(int t) {
    const Triangle tri = mesh_.triangles()[static_cast<std::size_t>(t)];
    std::array<LatticeOffset, 3> off;
    off[0] = {};
    off[1] = mesh_.wrap(tri[0], tri[1]);
    off[2] = off[1] + mesh_.wrap(tri[1], tri[2]);
    const Vec2 ci = packing_.center(tri[0], off[0]);
    const Vec2 cj = packing_.center(tri[1], off[1]);
    const Vec2 ck = packing_.center(tri[2], off[2]);
    const int o = point({PointKind::Incentre, t, 0, 0}, incentre(ci, cj, ck));
    for (int e = 0; e < 3; ++e) {
      const int i = tri[e], j = tri[(e + 1) % 3], k = tri[(e + 2) % 3];
      const LatticeOffset oi = off[e], oj = off[(e + 1) % 3];
      PatchPolygon poly;
      poly.role = PolygonRole::FillerPentagon;
      poly.triangle = t;
      poly.circles = {tri[0], tri[1], tri[2]};
      // Arc of i inside this triangle runs j -> k; arc of j runs k -> i.
      poly.vertices = {{arc(i, j, k, PointKind::ArcMid, 0, 0.5), oi},
                       {tangency(i, j), oi},
                       {tangency(j, i), oj},
                       {arc(j, k, i, PointKind::ArcMid, 0, 0.5), oj},
                       {o, {}}};
      push(std::move(poly));
    }
  }

  // Square gadget: pentagons (o, i_m, T(m, m+1), T(m+1, m), i_{m+1}) with
  // i_m the scaled former tangency point of rim circle m with the centre and
  // o the mean of the four i_m.
  void add_square(int g) {
    const auto& gadget = gadgets_[static_cast<std::size_t>(g)];
    const int a = gadget.centers.at(0);
    const auto& rim = gadget.rim;
    require_circles(g, rim);
    std::vector<LatticeOffset> off;
    std::vector<int> inner;
    Vec2 mean;
    for (int c : rim) {
      off.push_back(mesh_.wrap(a, c));
      inner.push_back(tangency(c, a));
      mean += patch_.points[static_cast<std::size_t>(inner.back())] + lattice_shift(patch_.lattice, off.back());
    }
    const int o = point({PointKind::GadgetCentre, g, 0, 0}, mean / 4.0);
    for (std::size_t m = 0; m < 4; ++m) {
      const std::size_t n = (m + 1) % 4;
      PatchPolygon poly;
      poly.role = PolygonRole::GadgetPentagon;
      poly.gadget = g;
      poly.circles = rim;
      poly.vertices = {{o, {}},
                       {inner[m], off[m]},
                       {tangency(rim[m], rim[n]), off[m]},
                       {tangency(rim[n], rim[m]), off[n]},
                       {inner[n], off[n]}};
      push(std::move(poly));
    }
  }

  // Bowtie with rim c, d, e, f: i and k are the scaled former tangency
  // points of c with a and of e with b; d and f have their hole arcs
  // trisected, j / l on the a side and j' / l' on the b side.
  void add_bowtie(int g) {
    const auto& gadget = gadgets_[static_cast<std::size_t>(g)];
    const int a = gadget.centers.at(0), b = gadget.centers.at(1);
    const int c = gadget.rim.at(0), d = gadget.rim.at(1), e = gadget.rim.at(2), f = gadget.rim.at(3);
    require_circles(g, gadget.rim);
    const LatticeOffset oc = mesh_.wrap(a, c), od = mesh_.wrap(a, d), oe = mesh_.wrap(a, b) + mesh_.wrap(b, e),
                        of = mesh_.wrap(a, f);
    const int i = tangency(c, a);
    const int k = tangency(e, b);
    const int j_prime = arc(d, e, c, PointKind::Trisect, 1, 1.0 / 3.0);
    const int j = arc(d, e, c, PointKind::Trisect, 2, 2.0 / 3.0);
    const int l = arc(f, c, e, PointKind::Trisect, 1, 1.0 / 3.0);
    const int l_prime = arc(f, c, e, PointKind::Trisect, 2, 2.0 / 3.0);
    auto at = [&](int p, LatticeOffset off) {
      return patch_.points[static_cast<std::size_t>(p)] + lattice_shift(patch_.lattice, off);
    };
    const int o = point({PointKind::GadgetCentre, g, 0, 0}, (at(i, oc) + at(j, od) + at(l, of)) / 3.0);
    const int o2 = point({PointKind::GadgetCentre, g, 1, 0}, (at(j_prime, od) + at(k, oe) + at(l_prime, of)) / 3.0);
    auto pentagon = [&](std::vector<PatchVertex> vs) {
      PatchPolygon poly;
      poly.role = PolygonRole::GadgetPentagon;
      poly.gadget = g;
      poly.circles = gadget.rim;
      poly.vertices = std::move(vs);
      push(std::move(poly));
    };
    pentagon({{o, {}}, {i, oc}, {tangency(c, d), oc}, {tangency(d, c), od}, {j, od}});
    pentagon({{o, {}}, {l, of}, {tangency(f, c), of}, {tangency(c, f), oc}, {i, oc}});
    pentagon({{o2, {}}, {j_prime, od}, {tangency(d, e), od}, {tangency(e, d), oe}, {k, oe}});
    pentagon({{o2, {}}, {k, oe}, {tangency(e, f), oe}, {tangency(f, e), of}, {l_prime, of}});
    PatchPolygon hex;
    hex.role = PolygonRole::BarrelHexagon;
    hex.gadget = g;
    hex.circles = gadget.rim;
    hex.vertices = {{o, {}}, {j, od}, {j_prime, od}, {o2, {}}, {l_prime, of}, {l, of}};
    push(std::move(hex));
  }

  void require_circles(int g, const std::vector<int>& rim) const {
    for (int c : rim) {
      if (!packing_.circles.count(c) || !patch_.cyclic_of.count(c)) {
        throw Error(ErrorCode::GadgetGeometryError,
                    "gadget " + std::to_string(g) + " is missing rim circle " + std::to_string(c));
      }
    }
  }

  void push(PatchPolygon poly) {
    std::vector<Vec2> pts;
    for (const auto& v : poly.vertices) pts.push_back(patch_.vertex(v));
    if (signed_area(pts) < 0.0) std::reverse(poly.vertices.begin(), poly.vertices.end());
    patch_.polygons.push_back(std::move(poly));
  }

  void link_edges() {
    // (from point, to point, to offset - from offset) -> (polygon, edge, from offset)
    std::map<std::tuple<int, int, LatticeOffset>, std::tuple<int, int, LatticeOffset>> directed;
    for (std::size_t p = 0; p < patch_.polygons.size(); ++p) {
      const auto& vs = patch_.polygons[p].vertices;
      for (std::size_t e = 0; e < vs.size(); ++e) {
        const auto& a = vs[e];
        const auto& b = vs[(e + 1) % vs.size()];
        const auto [it, inserted] = directed.emplace(std::tuple{a.point, b.point, b.offset - a.offset},
                                                     std::tuple{static_cast<int>(p), static_cast<int>(e), a.offset});
        if (!inserted) {
          throw Error(ErrorCode::GadgetGeometryError,
                      "patch edge used twice in the same direction (polygon " + std::to_string(p) + ")");
        }
      }
    }
    for (std::size_t p = 0; p < patch_.polygons.size(); ++p) {
      auto& poly = patch_.polygons[p];
      const auto& vs = poly.vertices;
      poly.links.assign(vs.size(), EdgeLink{});
      for (std::size_t e = 0; e < vs.size(); ++e) {
        const auto& a = vs[e];
        const auto& b = vs[(e + 1) % vs.size()];
        auto it = directed.find({b.point, a.point, a.offset - b.offset});
        if (it == directed.end()) continue;
        const auto& [q, qe, q_from] = it->second;
        poly.links[e] = {q, qe, b.offset - q_from};
      }
    }
  }

  const Packing& packing_;
  Mesh mesh_;
  PatchParams params_;
  std::vector<GadgetAnnotation> gadgets_;
  double mean_radius_ = 1.0;
  Patch patch_;
  std::map<Key, int> index_;
};

}  // namespace detail

/**
 * Builds the patch. Order: cyclic polygons by circle id, then the three
 * fillers of each surviving triangle, then gadget polygons.
 */
inline Patch build_patch(const Packing& packing, const Complex& complex, const PatchParams& params = {}) {
  return detail::PatchBuilder(packing, complex, params).build();
}

/// Number of trisected arcs in a cyclic polygon: vertex count minus twice
/// the number of surviving tangencies.
inline int bowtie_splits(const Patch& patch, const Complex& complex, int circle) {
  const Mesh mesh(complex);
  const auto& poly = patch.polygons.at(static_cast<std::size_t>(patch.cyclic_of.at(circle)));
  return static_cast<int>(poly.vertices.size()) - 2 * mesh.effective_degree(circle);
}

}  // namespace rosette
