#pragma once

/**
 * The combinatorial input: a pure simplicial 2-complex, either a disk or a
 * torus, plus optional gadget annotations.
 *
 * Vertex ids are arbitrary integers. Triangles are counterclockwise triples.
 * On a torus every directed edge carries a lattice wrap (wx, wy): the copy of
 * `to` adjacent to `from` lies in the fundamental domain translated by
 * wx * L1 + wy * L2. Only non-zero wraps are stored; the reverse edge carries
 * the negated wrap.
 */

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rosette/error.hpp"
#include "rosette/geometry.hpp"

namespace rosette {

enum class Topology { Disk, Torus };

struct LatticeOffset {
  int x = 0;
  int y = 0;

  constexpr LatticeOffset operator+(LatticeOffset o) const { return {x + o.x, y + o.y}; }
  constexpr LatticeOffset operator-(LatticeOffset o) const { return {x - o.x, y - o.y}; }
  constexpr LatticeOffset operator-() const { return {-x, -y}; }
  constexpr bool is_zero() const { return x == 0 && y == 0; }
  friend constexpr bool operator==(LatticeOffset, LatticeOffset) = default;
  friend constexpr auto operator<=>(LatticeOffset, LatticeOffset) = default;
};

struct VertexRecord {
  int id = 0;
  /// Authoring position; never read by the solver.
  std::optional<Vec2> hint;

  friend bool operator==(const VertexRecord&, const VertexRecord&) = default;
};

using Triangle = std::array<int, 3>;

struct Wrap {
  int from = 0;
  int to = 0;
  LatticeOffset offset;

  friend bool operator==(const Wrap&, const Wrap&) = default;
};

enum class GadgetKind { Square, Bowtie };

struct GadgetAnnotation {
  GadgetKind kind = GadgetKind::Square;
  /// Square: {a}. Bowtie: {a, b}, a adjacent to rim[0], b adjacent to rim[2].
  std::vector<int> centers;
  /// Square: the link cycle of a. Bowtie: {c, d, e, f}, d and f shared by a and b.
  std::vector<int> rim;

  friend bool operator==(const GadgetAnnotation&, const GadgetAnnotation&) = default;
};

struct Complex {
  Topology topology = Topology::Disk;
  std::vector<VertexRecord> vertices;
  std::vector<Triangle> triangles;
  std::vector<Wrap> wraps;
  std::vector<GadgetAnnotation> gadgets;

  friend bool operator==(const Complex&, const Complex&) = default;
};

inline std::pair<int, int> edge_key(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

/// Rotates a triangle so its smallest id comes first (orientation preserved).
inline Triangle rotate_min_first(Triangle t) {
  const auto it = std::min_element(t.begin(), t.end());
  std::rotate(t.begin(), it, t.end());
  return t;
}

/// Canonical form: vertices sorted by id, triangles min-first and sorted,
/// wraps stored once per undirected edge (from < to, non-zero only),
/// gadgets sorted by first center.
inline Complex canonical(Complex c) {
  std::sort(c.vertices.begin(), c.vertices.end(),
            [](const VertexRecord& a, const VertexRecord& b) { return a.id < b.id; });
  for (auto& t : c.triangles) t = rotate_min_first(t);
  std::sort(c.triangles.begin(), c.triangles.end());
  std::map<std::pair<int, int>, LatticeOffset> wraps;
  for (const Wrap& w : c.wraps) {
    if (w.offset.is_zero()) continue;
    if (w.from < w.to) wraps[{w.from, w.to}] = w.offset;
    else wraps[{w.to, w.from}] = -w.offset;
  }
  c.wraps.clear();
  for (const auto& [k, off] : wraps) c.wraps.push_back({k.first, k.second, off});
  std::sort(c.gadgets.begin(), c.gadgets.end(),
            [](const GadgetAnnotation& a, const GadgetAnnotation& b) {
              return a.centers < b.centers;
            });
  return c;
}

/**
 * Connectivity derived from a valid complex: cyclic neighbour order, boundary
 * flags, wraps. Construct only from complexes that pass `validate`.
 */
class Mesh {
 public:
  explicit Mesh(const Complex& complex) : topology_(complex.topology) {
    for (const auto& v : complex.vertices) ids_.push_back(v.id);
    std::sort(ids_.begin(), ids_.end());
    for (const Wrap& w : complex.wraps) {
      wraps_[{w.from, w.to}] = w.offset;
      wraps_[{w.to, w.from}] = -w.offset;
    }
    std::map<int, std::map<int, int>> link;  // v -> (a -> b) for ccw triangle (v, a, b)
    for (const Triangle& t : complex.triangles) {
      triangles_.push_back(t);
      for (int k = 0; k < 3; ++k) {
        link[t[k]][t[(k + 1) % 3]] = t[(k + 2) % 3];
        edges_.insert(edge_key(t[k], t[(k + 1) % 3]));
      }
    }
    for (int v : ids_) {
      const auto& next = link[v];
      std::set<int> has_pred;
      for (const auto& [a, b] : next) has_pred.insert(b);
      int start = next.empty() ? 0 : next.begin()->first;
      bool boundary = false;
      for (const auto& [a, b] : next) {
        if (!has_pred.count(a)) {
          start = a;
          boundary = true;
          break;
        }
      }
      std::vector<int> order;
      int cur = start;
      while (true) {
        order.push_back(cur);
        auto it = next.find(cur);
        if (it == next.end()) break;
        cur = it->second;
        if (cur == start) break;
        if (order.size() > next.size() + 1) break;
      }
      if (boundary) boundary_.insert(v);
      neighbors_[v] = std::move(order);
    }
    for (const auto& g : complex.gadgets) {
      for (int c : g.centers) gadget_centers_.insert(c);
    }
  }

  Topology topology() const { return topology_; }
  const std::vector<int>& ids() const { return ids_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::set<std::pair<int, int>>& edges() const { return edges_; }

  /// Counterclockwise neighbours. Interior vertices: a cycle starting at the
  /// smallest id. Boundary vertices: the open fan, consecutive pairs are
  /// triangles.
  const std::vector<int>& neighbors(int v) const { return neighbors_.at(v); }
  int degree(int v) const { return static_cast<int>(neighbors_.at(v).size()); }
  bool is_boundary(int v) const { return boundary_.count(v) > 0; }
  bool is_interior(int v) const { return !is_boundary(v); }
  bool is_gadget_center(int v) const { return gadget_centers_.count(v) > 0; }
  const std::set<int>& gadget_centers() const { return gadget_centers_; }
  bool adjacent(int a, int b) const { return edges_.count(edge_key(a, b)) > 0; }

  std::vector<int> interior_vertices() const {
    std::vector<int> out;
    for (int v : ids_) {
      if (is_interior(v)) out.push_back(v);
    }
    return out;
  }
  std::vector<int> boundary_vertices() const {
    std::vector<int> out;
    for (int v : ids_) {
      if (is_boundary(v)) out.push_back(v);
    }
    return out;
  }

  /// Degree once gadget centres are removed from the complex.
  int effective_degree(int v) const {
    int d = 0;
    for (int u : neighbors_.at(v)) d += is_gadget_center(u) ? 0 : 1;
    return d;
  }

  LatticeOffset wrap(int from, int to) const {
    auto it = wraps_.find({from, to});
    return it == wraps_.end() ? LatticeOffset{} : it->second;
  }

 private:
  Topology topology_;
  std::vector<int> ids_;
  std::vector<Triangle> triangles_;
  std::set<std::pair<int, int>> edges_;
  std::map<int, std::vector<int>> neighbors_;
  std::set<int> boundary_;
  std::set<int> gadget_centers_;
  std::map<std::pair<int, int>, LatticeOffset> wraps_;
};

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind {
  DuplicateVertex,
  UnknownVertex,
  DegenerateTriangle,
  IsolatedVertex,
  NonManifoldEdge,
  InconsistentOrientation,
  PinchVertex,
  Disconnected,
  EulerCharacteristic,
  BoundaryEdge,
  InconsistentWraps,
  GadgetReference,
  GadgetDegree,
  GadgetCombinatorics,
  GadgetOverlap,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::DuplicateVertex: return "duplicate vertex";
    case ViolationKind::UnknownVertex: return "unknown vertex";
    case ViolationKind::DegenerateTriangle: return "degenerate triangle";
    case ViolationKind::IsolatedVertex: return "isolated vertex";
    case ViolationKind::NonManifoldEdge: return "non-manifold edge";
    case ViolationKind::InconsistentOrientation: return "inconsistent orientation";
    case ViolationKind::PinchVertex: return "not simply connected / pinch vertex";
    case ViolationKind::Disconnected: return "disconnected";
    case ViolationKind::EulerCharacteristic: return "euler characteristic";
    case ViolationKind::BoundaryEdge: return "boundary edge on torus";
    case ViolationKind::InconsistentWraps: return "inconsistent wraps";
    case ViolationKind::GadgetReference: return "gadget reference";
    case ViolationKind::GadgetDegree: return "gadget degree constraint";
    case ViolationKind::GadgetCombinatorics: return "gadget combinatorics";
    case ViolationKind::GadgetOverlap: return "gadget overlap";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::string location;  // e.g. "vertex 1", "edge 2-3", "triangle 4", "gadget 0"
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind k) const {
    return std::any_of(violations.begin(), violations.end(),
                       [k](const Violation& v) { return v.kind == k; });
  }
  std::string summary() const {
    std::string out;
    for (const auto& v : violations) {
      if (!out.empty()) out += "\n";
      out += v.location + ": " + v.message;
    }
    return out;
  }
};

namespace detail {

inline void add(ValidationReport& r, ViolationKind kind, std::string location,
                const std::string& detail = {}) {
  std::string msg = to_string(kind);
  if (kind == ViolationKind::PinchVertex) msg += " " + location.substr(location.find(' ') + 1);
  if (!detail.empty()) msg += " (" + detail + ")";
  r.violations.push_back({kind, std::move(location), std::move(msg)});
}

inline std::string edge_name(int a, int b) {
  return "edge " + std::to_string(a) + "-" + std::to_string(b);
}

// Counts components of the graph formed by directed link edges a->b (treated
// as undirected) and whether it is a simple path or cycle.
struct LinkShape {
  int components = 0;
  bool simple = true;
  bool closed = false;
};

inline LinkShape link_shape(const std::vector<std::pair<int, int>>& link) {
  std::map<int, int> out_deg, in_deg;
  std::map<int, std::vector<int>> adj;
  for (auto [a, b] : link) {
    ++out_deg[a];
    ++in_deg[b];
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  LinkShape s;
  for (const auto& [v, nbrs] : adj) {
    if (out_deg[v] > 1 || in_deg[v] > 1) s.simple = false;
  }
  std::set<int> seen;
  for (const auto& [v, nbrs] : adj) {
    if (seen.count(v)) continue;
    ++s.components;
    std::vector<int> stack{v};
    seen.insert(v);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u]) {
        if (seen.insert(w).second) stack.push_back(w);
      }
    }
  }
  bool all_two = true;
  for (const auto& [v, nbrs] : adj) all_two = all_two && out_deg[v] == 1 && in_deg[v] == 1;
  s.closed = all_two;
  return s;
}

}  // namespace detail

/**
 * Checks every Complex invariant and returns all violations found. Never
 * throws: malformed input is reported, not rejected.
 */
inline ValidationReport validate(const Complex& c) {
  using detail::add;
  using detail::edge_name;
  ValidationReport r;
  const bool torus = c.topology == Topology::Torus;

  std::set<int> ids;
  for (const auto& v : c.vertices) {
    if (!ids.insert(v.id).second) add(r, ViolationKind::DuplicateVertex, "vertex " + std::to_string(v.id));
  }

  std::map<std::pair<int, int>, int> directed;            // directed edge -> count
  std::map<std::pair<int, int>, std::vector<int>> faces;  // undirected edge -> triangles
  std::map<int, std::vector<std::pair<int, int>>> links;
  std::vector<bool> usable(c.triangles.size(), true);
  for (std::size_t ti = 0; ti < c.triangles.size(); ++ti) {
    const Triangle& t = c.triangles[ti];
    const std::string loc = "triangle " + std::to_string(ti);
    bool ok = true;
    for (int v : t) {
      if (!ids.count(v)) {
        add(r, ViolationKind::UnknownVertex, loc, "vertex " + std::to_string(v));
        ok = false;
      }
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      add(r, ViolationKind::DegenerateTriangle, loc);
      ok = false;
    }
    usable[ti] = ok;
    if (!ok) continue;
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3], o = t[(k + 2) % 3];
      ++directed[{a, b}];
      faces[edge_key(a, b)].push_back(static_cast<int>(ti));
      links[a].push_back({b, o});
    }
  }

  for (int v : ids) {
    if (!links.count(v)) add(r, ViolationKind::IsolatedVertex, "vertex " + std::to_string(v));
  }

  int boundary_edges = 0;
  for (const auto& [e, tris] : faces) {
    if (tris.size() > 2) {
      add(r, ViolationKind::NonManifoldEdge, edge_name(e.first, e.second),
          std::to_string(tris.size()) + " triangles");
    } else if (tris.size() == 1) {
      ++boundary_edges;
      if (torus) add(r, ViolationKind::BoundaryEdge, edge_name(e.first, e.second));
    }
  }
  for (const auto& [e, count] : directed) {
    if (count > 1) {
      add(r, ViolationKind::InconsistentOrientation, edge_name(e.first, e.second),
          "directed edge used by " + std::to_string(count) + " triangles");
    }
  }

  for (const auto& [v, link] : links) {
    const auto shape = detail::link_shape(link);
    const std::string loc = "vertex " + std::to_string(v);
    if (shape.components > 1) {
      add(r, ViolationKind::PinchVertex, loc);
    } else if (!shape.simple) {
      add(r, ViolationKind::NonManifoldEdge, loc, "vertex link is not a path or cycle");
    } else if (torus && !shape.closed) {
      add(r, ViolationKind::BoundaryEdge, loc, "link is not a cycle");
    }
  }

  // Triangle connectivity through shared edges.
  {
    std::vector<int> comp(c.triangles.size(), -1);
    int comps = 0;
    for (std::size_t s = 0; s < c.triangles.size(); ++s) {
      if (!usable[s] || comp[s] >= 0) continue;
      std::vector<int> stack{static_cast<int>(s)};
      comp[s] = comps;
      while (!stack.empty()) {
        const int ti = stack.back();
        stack.pop_back();
        const Triangle& t = c.triangles[ti];
        for (int k = 0; k < 3; ++k) {
          for (int o : faces[edge_key(t[k], t[(k + 1) % 3])]) {
            if (comp[o] < 0) {
              comp[o] = comps;
              stack.push_back(o);
            }
          }
        }
      }
      ++comps;
    }
    if (comps > 1) add(r, ViolationKind::Disconnected, "complex", std::to_string(comps) + " components");
  }

  if (r.ok()) {
    const long v = static_cast<long>(ids.size());
    const long e = static_cast<long>(faces.size());
    const long f = static_cast<long>(c.triangles.size());
    const long chi = v - e + f;
    const long expected = torus ? 0 : 1;
    if (chi != expected) {
      add(r, ViolationKind::EulerCharacteristic, "complex",
          "V - E + F = " + std::to_string(chi) + ", expected " + std::to_string(expected));
    }
  }

  // Wraps.
  std::map<std::pair<int, int>, LatticeOffset> wrap;
  if (!torus && !c.wraps.empty()) {
    add(r, ViolationKind::InconsistentWraps, "wraps", "wraps given for a disk complex");
  }
  for (const Wrap& w : c.wraps) {
    const std::string loc = edge_name(w.from, w.to);
    if (!faces.count(edge_key(w.from, w.to))) {
      add(r, ViolationKind::InconsistentWraps, loc, "wrap on a non-edge");
      continue;
    }
    auto fwd = wrap.find({w.from, w.to});
    if (fwd != wrap.end() && !(fwd->second == w.offset)) {
      add(r, ViolationKind::InconsistentWraps, loc, "conflicting wrap entries");
    }
    wrap[{w.from, w.to}] = w.offset;
    wrap[{w.to, w.from}] = -w.offset;
  }
  if (torus) {
    auto get = [&](int a, int b) {
      auto it = wrap.find({a, b});
      return it == wrap.end() ? LatticeOffset{} : it->second;
    };
    for (std::size_t ti = 0; ti < c.triangles.size(); ++ti) {
      if (!usable[ti]) continue;
      const Triangle& t = c.triangles[ti];
      const LatticeOffset sum = get(t[0], t[1]) + get(t[1], t[2]) + get(t[2], t[0]);
      if (!sum.is_zero()) {
        add(r, ViolationKind::InconsistentWraps, "triangle " + std::to_string(ti),
            "wrap sum (" + std::to_string(sum.x) + "," + std::to_string(sum.y) + ")");
      }
    }
    // Lift along a spanning tree; the leftover cycle wraps must span Z^2.
    if (r.ok() && !faces.empty()) {
      std::map<int, std::vector<int>> adj;
      for (const auto& [e, tris] : faces) {
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
      }
      std::map<int, LatticeOffset> lift;
      const int start = faces.begin()->first.first;
      lift[start] = {};
      std::vector<int> stack{start};
      long long det = 0;
      std::vector<LatticeOffset> cycles;
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u : adj[v]) {
          const LatticeOffset at = lift[v] + get(v, u);
          auto [it, inserted] = lift.emplace(u, at);
          if (inserted) stack.push_back(u);
          else if (!(it->second == at)) cycles.push_back(at - it->second);
        }
      }
      for (std::size_t i = 0; i < cycles.size() && det == 0; ++i) {
        for (std::size_t j = i + 1; j < cycles.size() && det == 0; ++j) {
          det = 1LL * cycles[i].x * cycles[j].y - 1LL * cycles[i].y * cycles[j].x;
        }
      }
      if (det == 0) add(r, ViolationKind::InconsistentWraps, "wraps", "wraps do not span two lattice directions");
    }
  }

  // Gadgets.
  std::map<int, std::set<int>> nbrs;
  for (const auto& [e, tris] : faces) {
    nbrs[e.first].insert(e.second);
    nbrs[e.second].insert(e.first);
  }
  auto interior = [&](int v) {
    auto it = links.find(v);
    return it != links.end() && detail::link_shape(it->second).closed;
  };
  std::set<int> used_centers;
  for (std::size_t gi = 0; gi < c.gadgets.size(); ++gi) {
    const auto& g = c.gadgets[gi];
    const std::string loc = "gadget " + std::to_string(gi);
    const std::size_t want_centers = g.kind == GadgetKind::Square ? 1 : 2;
    if (g.centers.size() != want_centers || g.rim.size() != 4) {
      add(r, ViolationKind::GadgetCombinatorics, loc, "wrong number of centers or rim vertices");
      continue;
    }
    bool refs_ok = true;
    for (int v : g.centers) refs_ok = refs_ok && ids.count(v);
    for (int v : g.rim) refs_ok = refs_ok && ids.count(v);
    if (!refs_ok) {
      add(r, ViolationKind::GadgetReference, loc, "references an unknown vertex");
      continue;
    }
    bool degree_ok = true;
    for (int v : g.centers) {
      if (!used_centers.insert(v).second) {
        add(r, ViolationKind::GadgetOverlap, loc, "center " + std::to_string(v) + " shared");
      }
      if (nbrs[v].size() != 4) {
        add(r, ViolationKind::GadgetDegree, loc,
            "center " + std::to_string(v) + " has degree " + std::to_string(nbrs[v].size()) +
                ", expected 4");
        degree_ok = false;
      } else if (!interior(v)) {
        add(r, ViolationKind::GadgetDegree, loc, "center " + std::to_string(v) + " is not interior");
        degree_ok = false;
      }
    }
    if (!degree_ok) continue;
    const std::set<int> rim(g.rim.begin(), g.rim.end());
    if (g.kind == GadgetKind::Square) {
      if (nbrs[g.centers[0]] != rim) {
        add(r, ViolationKind::GadgetCombinatorics, loc, "rim is not the link of the center");
      }
    } else {
      const int a = g.centers[0], b = g.centers[1];
      const int cc = g.rim[0], d = g.rim[1], e = g.rim[2], f = g.rim[3];
      const std::set<int> want_a{b, cc, d, f};
      const std::set<int> want_b{a, d, e, f};
      if (nbrs[a] != want_a || nbrs[b] != want_b || rim.size() != 4) {
        add(r, ViolationKind::GadgetCombinatorics, loc,
            "centers must be adjacent and share exactly rim neighbours d and f");
      }
    }
  }
  // Centres of different gadgets may not touch: the holes would merge.
  for (const auto& g : c.gadgets) {
    for (const auto& h : c.gadgets) {
      if (&g >= &h) continue;
      for (int u : g.centers) {
        for (int v : h.centers) {
          if (nbrs[u].count(v)) {
            add(r, ViolationKind::GadgetOverlap, detail::edge_name(u, v),
                "centers of different gadgets are adjacent");
          }
        }
      }
    }
  }
  return r;
}

}  // namespace rosette
