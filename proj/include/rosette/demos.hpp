#pragma once

// Built-in complexes used by the CLI, the tests and the docs.
//
//   flower<k>          one hub and k boundary petals
//   flower-of-flowers  cone(7, 2): a 7-fold hub with two rings
//   grid-gadgets       square grid with seeded diagonals, square and bowtie gadgets
//   bowtie-grid        every interior cell a bowtie of the same orientation
//   torus-hex          4x4 triangulated grid on the torus (all degrees 6)
//   random             Delaunay triangulation of 60 seeded points

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "rosette/complex.hpp"
#include "rosette/delaunay.hpp"
#include "rosette/error.hpp"
#include "rosette/geometry.hpp"

namespace rosette {

namespace detail {

inline void add_ccw(Complex& c, int a, int b, int d) {
  const auto hint = [&](int id) { return *c.vertices[static_cast<std::size_t>(id - 1)].hint; };
  if (orient(hint(a), hint(b), hint(d)) < 0.0) std::swap(b, d);
  c.triangles.push_back({a, b, d});
}

}  // namespace detail

/// Hub surrounded by `rings` hexagonal-style rings with `sectors` sectors.
/// cone(k, 1) is the k-flower.
inline Complex cone_complex(int sectors, int rings) {
  if (sectors < 3 || rings < 1) throw Error(ErrorCode::InvalidArgument, "cone needs sectors >= 3 and rings >= 1");
  Complex c;
  c.topology = Topology::Disk;
  auto dir = [&](int s) { return polar(1.0, kTwoPi * s / sectors); };
  std::vector<std::vector<int>> ring(rings + 1);
  ring[0] = {1};
  c.vertices.push_back({1, Vec2{}});
  for (int r = 1; r <= rings; ++r) {
    for (int s = 0; s < sectors; ++s) {
      for (int t = 0; t < r; ++t) {
        const int id = static_cast<int>(c.vertices.size()) + 1;
        c.vertices.push_back({id, dir(s) * r + (dir(s + 1) - dir(s)) * t});
        ring[r].push_back(id);
      }
    }
  }
  auto at = [&](int r, int s, int t) {
    if (r == 0) return 1;
    const int n = r * sectors;
    return ring[r][static_cast<std::size_t>(((s * r + t) % n + n) % n)];
  };
  for (int r = 0; r < rings; ++r) {
    for (int s = 0; s < sectors; ++s) {
      for (int t = 0; t <= r; ++t) detail::add_ccw(c, at(r, s, t), at(r + 1, s, t), at(r + 1, s, t + 1));
      for (int t = 0; t < r; ++t) detail::add_ccw(c, at(r, s, t), at(r + 1, s, t + 1), at(r, s, t + 1));
    }
  }
  return canonical(std::move(c));
}

inline Complex flower(int k) { return cone_complex(k, 1); }

/// The symmetric 7-fold test complex.
inline Complex flower_of_flowers() { return cone_complex(7, 2); }

enum class CellKind { Diagonal, Square, Bowtie, BowtieMirrored };

/**
 * Square grid of `w` x `h` cells. Boundary cells are always split by a
 * diagonal; interior cells follow `kinds` (row-major over all cells) when
 * given, otherwise they are drawn from `seed`.
 */
inline Complex grid_complex(int w, int h, const std::vector<CellKind>& kinds) {
  Complex c;
  c.topology = Topology::Disk;
  auto corner = [&](int i, int j) { return 1 + i + (w + 1) * j; };
  for (int j = 0; j <= h; ++j) {
    for (int i = 0; i <= w; ++i) c.vertices.push_back({corner(i, j), Vec2{double(i), double(j)}});
  }
  auto add_vertex = [&](Vec2 p) {
    const int id = static_cast<int>(c.vertices.size()) + 1;
    c.vertices.push_back({id, p});
    return id;
  };
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      const int bl = corner(i, j), br = corner(i + 1, j), tr = corner(i + 1, j + 1), tl = corner(i, j + 1);
      const CellKind kind = kinds[static_cast<std::size_t>(i + w * j)];
      const Vec2 o{i + 0.5, j + 0.5};
      if (kind == CellKind::Diagonal) {
        if ((i + j) % 2 == 0) {
          detail::add_ccw(c, bl, br, tr);
          detail::add_ccw(c, bl, tr, tl);
        } else {
          detail::add_ccw(c, bl, br, tl);
          detail::add_ccw(c, br, tr, tl);
        }
      } else if (kind == CellKind::Square) {
        const int a = add_vertex(o);
        detail::add_ccw(c, a, bl, br);
        detail::add_ccw(c, a, br, tr);
        detail::add_ccw(c, a, tr, tl);
        detail::add_ccw(c, a, tl, bl);
        c.gadgets.push_back({GadgetKind::Square, {a}, {bl, br, tr, tl}});
      } else {
        // Rim c, d, e, f counterclockwise; a sits towards c, b towards e.
        const bool mirrored = kind == CellKind::BowtieMirrored;
        const int rc = mirrored ? br : bl, rd = mirrored ? tr : br, re = mirrored ? tl : tr, rf = mirrored ? bl : tl;
        const Vec2 pc = *c.vertices[static_cast<std::size_t>(rc - 1)].hint;
        const Vec2 pe = *c.vertices[static_cast<std::size_t>(re - 1)].hint;
        const int a = add_vertex(pc + (pe - pc) * (1.0 / 3.0));
        const int b = add_vertex(pc + (pe - pc) * (2.0 / 3.0));
        detail::add_ccw(c, a, rc, rd);
        detail::add_ccw(c, a, rd, b);
        detail::add_ccw(c, a, b, rf);
        detail::add_ccw(c, a, rf, rc);
        detail::add_ccw(c, b, rd, re);
        detail::add_ccw(c, b, re, rf);
        c.gadgets.push_back({GadgetKind::Bowtie, {a, b}, {rc, rd, re, rf}});
      }
    }
  }
  return canonical(std::move(c));
}

inline Complex grid_with_gadgets(std::uint64_t seed = 7, int w = 6, int h = 6) {
  std::mt19937_64 rng(seed);
  std::vector<CellKind> kinds;
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      const bool edge = i == 0 || j == 0 || i == w - 1 || j == h - 1;
      const auto roll = rng() % 4;
      kinds.push_back(edge ? CellKind::Diagonal : static_cast<CellKind>(roll));
    }
  }
  return grid_complex(w, h, kinds);
}

inline Complex bowtie_grid(int w = 6, int h = 6) {
  std::vector<CellKind> kinds;
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      const bool edge = i == 0 || j == 0 || i == w - 1 || j == h - 1;
      kinds.push_back(edge ? CellKind::Diagonal : CellKind::Bowtie);
    }
  }
  return grid_complex(w, h, kinds);
}

/// n x n triangulated grid on the torus; every vertex has degree 6.
inline Complex torus_hex(int n = 4) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "torus grid needs n >= 3");
  Complex c;
  c.topology = Topology::Torus;
  auto id = [&](int i, int j) { return 1 + i + n * j; };
  auto floor_div = [&](int a) { return a >= 0 ? a / n : -((-a + n - 1) / n); };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) c.vertices.push_back({id(i, j), Vec2{i + 0.5 * j, j * std::sqrt(3.0) / 2.0}});
  }
  std::map<std::pair<int, int>, LatticeOffset> wraps;
  auto corner = [&](int i, int j, int di, int dj) {
    const int x = i + di, y = j + dj;
    const LatticeOffset off{floor_div(x), floor_div(y)};
    return std::pair{id(x - off.x * n, y - off.y * n), off};
  };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      for (const auto& tri : {std::array<std::pair<int, int>, 3>{{{0, 0}, {1, 0}, {1, 1}}},
                              std::array<std::pair<int, int>, 3>{{{0, 0}, {1, 1}, {0, 1}}}}) {
        std::array<std::pair<int, LatticeOffset>, 3> v;
        for (int k = 0; k < 3; ++k) v[k] = corner(i, j, tri[k].first, tri[k].second);
        c.triangles.push_back({v[0].first, v[1].first, v[2].first});
        for (int k = 0; k < 3; ++k) {
          const auto& [a, oa] = v[k];
          const auto& [b, ob] = v[(k + 1) % 3];
          const LatticeOffset w = ob - oa;
          if (!w.is_zero()) wraps[{a, b}] = w;
        }
      }
    }
  }
  for (const auto& [e, w] : wraps) {
    if (e.first < e.second) c.wraps.push_back({e.first, e.second, w});
  }
  return canonical(std::move(c));
}

inline Complex random_complex(std::size_t count = 60, std::uint64_t seed = 7) {
  const auto pts = random_points(count, seed);
  return delaunay_from_points(pts, seed);
}

inline const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names{"flower6", "flower-of-flowers", "grid-gadgets",
                                              "bowtie-grid", "torus-hex", "random"};
  return names;
}

/// Looks up a demo by name; "flower<k>" accepts any k >= 3.
inline Complex demo(std::string_view name, std::uint64_t seed = 7) {
  if (name.starts_with("flower") && name.size() > 6 && name != "flower-of-flowers") {
    const std::string digits(name.substr(6));
    if (digits.find_first_not_of("0123456789") == std::string::npos) return flower(std::stoi(digits));
  }
  if (name == "flower-of-flowers") return flower_of_flowers();
  if (name == "grid-gadgets") return grid_with_gadgets(seed);
  if (name == "bowtie-grid") return bowtie_grid();
  if (name == "torus-hex") return torus_hex();
  if (name == "random") return random_complex(60, seed);
  throw Error(ErrorCode::InvalidArgument, "unknown demo '" + std::string(name) + "'");
}

}  // namespace rosette
