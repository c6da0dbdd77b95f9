#pragma once

/**
 * Assembles the final design: a star in every cyclic polygon, PIC motifs in
 * the fillers (edges shared with a star continue its strokes, other edges
 * use the global contact angle), the barrel hexagon crossing fix, and the
 * trim to a core of whole rosettes.
 */

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rosette/complex.hpp"
#include "rosette/error.hpp"
#include "rosette/geometry.hpp"
#include "rosette/motif.hpp"
#include "rosette/packing.hpp"
#include "rosette/patch.hpp"

namespace rosette {

enum class FillerRule { AllNeighborsKept, AnyTwoKept };

struct MotifParams {
  double theta = 2.0 * kPi / 5.0;
  std::optional<double> alpha_override;
  int trim_depth = 1;
  FillerRule filler_rule = FillerRule::AllNeighborsKept;
  /// When set, replaces the automatic selection (intersected with circles
  /// whose star could be built).
  std::optional<std::set<int>> keep;
  std::set<int> discard;
  bool fix_hexagons = true;
  /// Torus: lattice copies stamped per direction (copies (0..n-1)^2).
  int stamp = 3;
};

struct RosetteRecord {
  int circle = 0;
  int order = 0;
  Vec2 center;
  std::vector<int> polygons;

  friend bool operator==(const RosetteRecord&, const RosetteRecord&) = default;
};

struct PolygonFailure {
  int polygon = 0;
  ErrorCode code = ErrorCode::MotifFailure;
  std::string message;

  friend bool operator==(const PolygonFailure&, const PolygonFailure&) = default;
};

struct Design {
  Topology topology = Topology::Disk;
  std::optional<Lattice> lattice;
  std::vector<LatticeOffset> copies{LatticeOffset{}};
  std::map<int, Motif> motifs;  // retained polygons only
  std::map<int, RosetteRecord> rosettes;
  std::set<int> kept;
  std::vector<PolygonFailure> failures;
  std::vector<int> fixed_hexagons;
  int trim_depth = 0;
  std::vector<std::string> notes;

  std::size_t segment_count() const {
    std::size_t n = 0;
    for (const auto& [p, m] : motifs) n += m.size();
    return n * copies.size();
  }

  friend bool operator==(const Design&, const Design&) = default;
};

namespace detail {

class Assembler {
 public:
  Assembler(const Patch& patch, const Packing& packing, const Complex& complex, const MotifParams& params)
      : patch_(patch), packing_(packing), complex_(complex), params_(params) {
    if (!(params.theta > 0.0 && params.theta < kPi / 2.0)) {
      throw Error(ErrorCode::InvalidArgument, "theta must lie in (0, pi/2)");
    }
    if (params.trim_depth < 0) throw Error(ErrorCode::InvalidArgument, "trim_depth must be >= 0");
    double extent = 0.0;
    for (const Vec2& p : patch.points) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
    tol_ = 1e-9 * std::max(1.0, extent);
  }

  Design run() {
    const int count = static_cast<int>(patch_.polygons.size());
    // Stars first; fillers read their segments.
    for (int p = 0; p < count; ++p) {
      const auto& poly = patch_.polygons[static_cast<std::size_t>(p)];
      if (poly.role != PolygonRole::Cyclic) continue;
      guarded(p, [&] {
        const auto pts = patch_.coords(p);
        motifs_[p] = star_in_cyclic_polygon(pts, packing_.circles.at(poly.circle).center, params_.theta,
                                            params_.alpha_override);
      });
    }
    for (int p = 0; p < count; ++p) {
      if (patch_.polygons[static_cast<std::size_t>(p)].role != PolygonRole::Cyclic) build_pic(p);
    }
    if (params_.fix_hexagons) {
      for (int p = 0; p < count; ++p) {
        if (patch_.polygons[static_cast<std::size_t>(p)].role == PolygonRole::BarrelHexagon) fix_hexagon(p);
      }
    }
    return patch_.topology == Topology::Torus ? finish_torus() : finish_disk();
  }

 private:
  template <class F>
  void guarded(int p, F&& f) {
    try {
      f();
    } catch (const Error& e) {
      failures_[p] = {p, e.code(), e.what()};
    }
  }

  /// Neighbour segments translated into this polygon's copy.
  Motif neighbour_segments(const EdgeLink& link) const {
    auto it = motifs_.find(link.polygon);
    if (it == motifs_.end()) return {};
    const Vec2 shift = lattice_shift(patch_.lattice, link.shift);
    Motif out;
    for (const auto& s : it->second) out.push_back({s.a + shift, s.b + shift});
    return out;
  }

  std::vector<EdgeRays> edge_rays(int p, const std::set<int>& continue_from = {}) const {
    const auto& poly = patch_.polygons[static_cast<std::size_t>(p)];
    const auto pts = patch_.coords(p);
    std::vector<EdgeRays> rays;
    for (std::size_t e = 0; e < pts.size(); ++e) {
      EdgeRays r{params_.theta, params_.theta};
      const EdgeLink& link = poly.links[e];
      if (!link.boundary()) {
        const auto& other = patch_.polygons[static_cast<std::size_t>(link.polygon)];
        if (other.role == PolygonRole::Cyclic || continue_from.count(link.polygon)) {
          const Motif seg = neighbour_segments(link);
          if (auto c = continuation_rays(pts[e], pts[(e + 1) % pts.size()], seg, tol_)) r = *c;
        }
      }
      rays.push_back(r);
    }
    return rays;
  }

  void build_pic(int p, const std::set<int>& continue_from = {}) {
    failures_.erase(p);
    motifs_.erase(p);
    guarded(p, [&] {
      const auto pts = patch_.coords(p);
      pic_[p] = pic_motif(pts, edge_rays(p, continue_from), p);
      motifs_[p] = segments_of(pic_[p], pts);
    });
  }

  void fix_hexagon(int h) {
    auto it = pic_.find(h);
    if (it == pic_.end()) return;
    const auto& poly = patch_.polygons[static_cast<std::size_t>(h)];
    const int n = static_cast<int>(poly.vertices.size());
    auto flank = [&](int v) {
      for (int e : {(v + n - 1) % n, v}) {
        const auto& link = poly.links[static_cast<std::size_t>(e)];
        if (link.boundary() || patch_.polygons[static_cast<std::size_t>(link.polygon)].role == PolygonRole::Cyclic) {
          return false;
        }
      }
      return true;
    };
    std::vector<int> flanks;
    for (int v = 0; v < n; ++v) {
      if (flank(v)) flanks.push_back(v);
    }
    if (flanks.size() != 2) return;
    const auto pts = patch_.coords(h);
    if (!fix_bowtie_hexagon(it->second, pts, flanks[0], flanks[1])) return;
    motifs_[h] = segments_of(it->second, pts);
    fixed_.push_back(h);
    for (const auto& link : poly.links) {
      if (link.boundary()) continue;
      if (patch_.polygons[static_cast<std::size_t>(link.polygon)].role == PolygonRole::Cyclic) continue;
      build_pic(link.polygon, {h});
    }
  }

  Design base() const {
    Design d;
    d.topology = patch_.topology;
    d.lattice = patch_.lattice;
    for (const auto& [p, f] : failures_) d.failures.push_back(f);
    d.fixed_hexagons = fixed_;
    return d;
  }

  RosetteRecord rosette(int circle, const std::set<int>& retained) const {
    const int p = patch_.cyclic_of.at(circle);
    const auto& poly = patch_.polygons[static_cast<std::size_t>(p)];
    RosetteRecord r{circle, static_cast<int>(poly.vertices.size()), packing_.circles.at(circle).center, {p}};
    for (const auto& link : poly.links) {
      if (!link.boundary() && retained.count(link.polygon)) r.polygons.push_back(link.polygon);
    }
    return r;
  }

  Design finish_disk() {
    Design d = base();
    std::set<int> kept;
    int depth = params_.trim_depth;
    if (params_.keep) {
      kept = *params_.keep;
    } else {
      while (true) {
        try {
          kept = select_interior(packing_, complex_, depth);
          break;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::EmptySelection || depth == 0) {
            d.notes.push_back("no circle survives trimming");
            break;
          }
          --depth;
          d.notes.push_back("nothing deeper than trim depth " + std::to_string(depth + 1) + ", using " +
                            std::to_string(depth));
        }
      }
    }
    d.trim_depth = depth;
    std::set<int> feasible;
    for (const auto& [circle, p] : patch_.cyclic_of) {
      if (motifs_.count(p)) feasible.insert(circle);
    }
    for (int c : kept) {
      if (feasible.count(c) && !params_.discard.count(c)) d.kept.insert(c);
    }
    std::set<int> retained;
    for (std::size_t p = 0; p < patch_.polygons.size(); ++p) {
      const auto& poly = patch_.polygons[p];
      bool keep = false;
      if (poly.role == PolygonRole::Cyclic) {
        keep = d.kept.count(poly.circle) > 0;
      } else {
        const auto hits = std::count_if(poly.circles.begin(), poly.circles.end(), [&](int c) { return d.kept.count(c) > 0; });
        keep = params_.filler_rule == FillerRule::AllNeighborsKept ? hits == static_cast<long>(poly.circles.size())
                                                                   : hits >= 2;
      }
      if (keep && motifs_.count(static_cast<int>(p))) retained.insert(static_cast<int>(p));
    }
    for (int p : retained) d.motifs[p] = motifs_.at(p);
    for (int c : d.kept) d.rosettes[c] = rosette(c, retained);
    return d;
  }

  Design finish_torus() {
    Design d = base();
    if (params_.stamp < 1) throw Error(ErrorCode::InvalidArgument, "stamp must be >= 1");
    d.copies.clear();
    for (int y = 0; y < params_.stamp; ++y) {
      for (int x = 0; x < params_.stamp; ++x) d.copies.push_back({x, y});
    }
    std::set<int> retained;
    for (const auto& [p, m] : motifs_) retained.insert(p);
    for (int p : retained) d.motifs[p] = motifs_.at(p);
    for (const auto& [circle, p] : patch_.cyclic_of) {
      if (motifs_.count(p)) d.kept.insert(circle);
    }
    for (int c : d.kept) d.rosettes[c] = rosette(c, retained);
    return d;
  }

  const Patch& patch_;
  const Packing& packing_;
  const Complex& complex_;
  MotifParams params_;
  double tol_ = 1e-9;
  std::map<int, Motif> motifs_;
  std::map<int, PicMotif> pic_;
  std::map<int, PolygonFailure> failures_;
  std::vector<int> fixed_;
};

}  // namespace detail

inline Design assemble(const Patch& patch, const Packing& packing, const Complex& complex,
                       const MotifParams& params = {}) {
  return detail::Assembler(patch, packing, complex, params).run();
}

/// All segments of a design, lattice copies included, in output order.
inline std::vector<std::pair<int, Segment>> design_segments(const Design& d) {
  std::vector<std::pair<int, Segment>> out;
  for (LatticeOffset c : d.copies) {
    const Vec2 s = lattice_shift(d.lattice, c);
    for (const auto& [p, motif] : d.motifs) {
      for (const auto& seg : motif) out.push_back({p, {seg.a + s, seg.b + s}});
    }
  }
  return out;
}

struct SeamReport {
  std::size_t edges_checked = 0;
  double worst = 0.0;  // largest endpoint mismatch or distance from the edge midpoint
  std::vector<std::string> problems;
};

/**
 * For every patch edge whose two polygons both carry a retained motif, the
 * motif endpoints lying on that edge from either side must coincide and sit
 * at the edge midpoint.
 */
inline SeamReport check_seams(const Design& design, const Patch& patch, double tol = 1e-9) {
  SeamReport r;
  auto on_edge = [&](const Motif& m, Vec2 a, Vec2 b, Vec2 shift) {
    std::vector<Vec2> out;
    const double eps = 1e-7 * std::max(1.0, distance(a, b));
    for (const auto& s : m) {
      for (Vec2 p : {s.a + shift, s.b + shift}) {
        if (point_segment_distance(p, a, b) <= eps) out.push_back(p);
      }
    }
    return out;
  };
  for (const auto& [p, motif] : design.motifs) {
    const auto& poly = patch.polygons[static_cast<std::size_t>(p)];
    const auto pts = patch.coords(p);
    for (std::size_t e = 0; e < pts.size(); ++e) {
      const EdgeLink& link = poly.links[e];
      if (link.boundary() || link.polygon < p || !design.motifs.count(link.polygon)) continue;
      const Vec2 a = pts[e], b = pts[(e + 1) % pts.size()];
      const Vec2 m = midpoint(a, b);
      const auto mine = on_edge(motif, a, b, {});
      const auto theirs = on_edge(design.motifs.at(link.polygon), a, b, lattice_shift(patch.lattice, link.shift));
      ++r.edges_checked;
      if (mine.empty() || theirs.empty()) {
        r.problems.push_back("edge " + std::to_string(e) + " of polygon " + std::to_string(p) + " has no stroke");
        r.worst = std::max(r.worst, 1.0);
        continue;
      }
      double local = 0.0;
      for (Vec2 q : mine) local = std::max(local, distance(q, m));
      for (Vec2 q : theirs) local = std::max(local, distance(q, m));
      r.worst = std::max(r.worst, local);
      if (local > tol && r.problems.size() < 10) {
        r.problems.push_back("edge " + std::to_string(e) + " of polygon " + std::to_string(p) + " mismatch");
      }
    }
  }
  return r;
}

}  // namespace rosette
