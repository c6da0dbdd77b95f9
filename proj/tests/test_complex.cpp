#include <gtest/gtest.h>

#include "rosette/complex.hpp"
#include "rosette/demos.hpp"

using namespace rosette;

namespace {

Complex single_triangle() {
  Complex c;
  c.vertices = {{1, {}}, {2, {}}, {3, {}}};
  c.triangles = {{1, 2, 3}};
  return c;
}

Complex wheel(int k) {
  Complex c;
  c.vertices.push_back({1, {}});
  for (int i = 0; i < k; ++i) c.vertices.push_back({i + 2, {}});
  for (int i = 0; i < k; ++i) c.triangles.push_back({1, i + 2, (i + 1) % k + 2});
  return c;
}

}  // namespace

TEST(Validate, SingleTriangleIsValid) { EXPECT_TRUE(validate(single_triangle()).ok()); }

TEST(Validate, PinchVertex) {
  Complex c;
  c.vertices = {{1, {}}, {2, {}}, {3, {}}, {4, {}}, {5, {}}};
  c.triangles = {{1, 2, 3}, {1, 4, 5}};
  const auto r = validate(c);
  ASSERT_TRUE(r.has(ViolationKind::PinchVertex)) << r.summary();
  EXPECT_NE(r.summary().find("not simply connected / pinch vertex 1"), std::string::npos) << r.summary();
}

TEST(Validate, SquareGadgetOnFiveWheelViolatesDegree) {
  Complex c = wheel(5);
  c.gadgets.push_back({GadgetKind::Square, {1}, {2, 3, 4, 5}});
  const auto r = validate(c);
  ASSERT_TRUE(r.has(ViolationKind::GadgetDegree)) << r.summary();
  EXPECT_NE(r.summary().find("gadget degree constraint"), std::string::npos);
}

TEST(Validate, SquareGadgetOnFourWheelWithRimBoundaryNeedsInteriorRim) {
  Complex c = wheel(4);
  c.gadgets.push_back({GadgetKind::Square, {1}, {2, 3, 4, 5}});
  EXPECT_TRUE(validate(c).ok()) << validate(c).summary();
}

TEST(Validate, UnknownVertex) {
  Complex c = single_triangle();
  c.triangles.push_back({2, 9, 3});
  EXPECT_TRUE(validate(c).has(ViolationKind::UnknownVertex));
}

TEST(Validate, OrientationMismatch) {
  Complex c;
  c.vertices = {{1, {}}, {2, {}}, {3, {}}, {4, {}}};
  c.triangles = {{1, 2, 3}, {1, 2, 4}};
  EXPECT_TRUE(validate(c).has(ViolationKind::InconsistentOrientation));
}

TEST(Validate, NonManifoldEdge) {
  Complex c;
  c.vertices = {{1, {}}, {2, {}}, {3, {}}, {4, {}}, {5, {}}};
  c.triangles = {{1, 2, 3}, {2, 1, 4}, {2, 1, 5}};
  EXPECT_TRUE(validate(c).has(ViolationKind::NonManifoldEdge));
}

TEST(Validate, AnnulusFailsEuler) {
  // Square ring of 8 triangles around a hole.
  Complex c;
  for (int i = 1; i <= 8; ++i) c.vertices.push_back({i, {}});
  for (int i = 0; i < 4; ++i) {
    const int o0 = 1 + i, o1 = 1 + (i + 1) % 4, i0 = 5 + i, i1 = 5 + (i + 1) % 4;
    c.triangles.push_back({o0, o1, i1});
    c.triangles.push_back({o0, i1, i0});
  }
  const auto r = validate(c);
  EXPECT_FALSE(r.ok());
}

TEST(Validate, IsolatedVertex) {
  Complex c = single_triangle();
  c.vertices.push_back({4, {}});
  EXPECT_TRUE(validate(c).has(ViolationKind::IsolatedVertex));
}

TEST(Validate, DemosAreValid) {
  for (const auto& name : demo_names()) {
    const auto r = validate(demo(name));
    EXPECT_TRUE(r.ok()) << name << ": " << r.summary();
  }
  for (int k = 3; k <= 12; ++k) EXPECT_TRUE(validate(flower(k)).ok());
}

TEST(Validate, TorusWrapCorruptionDetected) {
  Complex c = torus_hex();
  ASSERT_FALSE(c.wraps.empty());
  c.wraps[0].offset.x += 1;
  EXPECT_TRUE(validate(c).has(ViolationKind::InconsistentWraps));
}

TEST(Validate, TorusWithoutWrapsFails) {
  Complex c = torus_hex();
  c.wraps.clear();
  EXPECT_TRUE(validate(c).has(ViolationKind::InconsistentWraps));
}

TEST(Validate, DiskMustNotCarryWraps) {
  Complex c = flower(6);
  c.wraps.push_back({1, 2, {1, 0}});
  EXPECT_FALSE(validate(c).ok());
}

TEST(Validate, BowtieCombinatorics) {
  Complex c = bowtie_grid(3, 3);
  ASSERT_TRUE(validate(c).ok()) << validate(c).summary();
  ASSERT_EQ(c.gadgets.size(), 1u);
  std::swap(c.gadgets[0].rim[0], c.gadgets[0].rim[1]);
  EXPECT_FALSE(validate(c).ok());
}

TEST(Validate, GadgetCentresMustBeDistinct) {
  Complex c = grid_complex(3, 3, std::vector<CellKind>(9, CellKind::Diagonal));
  ASSERT_TRUE(validate(c).ok());
  c = grid_complex(3, 3, {CellKind::Diagonal, CellKind::Diagonal, CellKind::Diagonal, CellKind::Diagonal,
                          CellKind::Square, CellKind::Diagonal, CellKind::Diagonal, CellKind::Diagonal,
                          CellKind::Diagonal});
  ASSERT_TRUE(validate(c).ok()) << validate(c).summary();
  c.gadgets.push_back(c.gadgets[0]);
  EXPECT_FALSE(validate(c).ok());
}

TEST(Mesh, DiskBoundaryCountsMatch) {
  for (const auto& name : {"flower6", "flower-of-flowers", "grid-gadgets", "bowtie-grid", "random"}) {
    const Complex c = demo(name);
    const Mesh m(c);
    std::size_t boundary_edges = 0;
    std::map<std::pair<int, int>, int> count;
    for (const auto& t : m.triangles()) {
      for (int k = 0; k < 3; ++k) ++count[edge_key(t[k], t[(k + 1) % 3])];
    }
    for (const auto& [e, n] : count) boundary_edges += n == 1 ? 1 : 0;
    EXPECT_EQ(m.boundary_vertices().size(), boundary_edges) << name;
  }
}

TEST(Mesh, DegreeSumIsTwiceEdges) {
  for (const auto& name : demo_names()) {
    const Mesh m(demo(name));
    std::size_t sum = 0;
    for (int v : m.ids()) sum += static_cast<std::size_t>(m.degree(v));
    EXPECT_EQ(sum, 2 * m.edges().size()) << name;
  }
}

TEST(Mesh, NeighboursAreCounterclockwise) {
  const Complex c = flower_of_flowers();
  const Mesh m(c);
  std::map<int, Vec2> hint;
  for (const auto& v : c.vertices) hint[v.id] = *v.hint;
  for (int v : m.interior_vertices()) {
    const auto& n = m.neighbors(v);
    double total = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
      total += ccw_angle(hint[n[i]] - hint[v], hint[n[(i + 1) % n.size()]] - hint[v]);
    }
    EXPECT_NEAR(total, kTwoPi, 1e-9) << v;
    EXPECT_EQ(n.front(), *std::min_element(n.begin(), n.end()));
  }
}

TEST(Mesh, EffectiveDegreeSkipsGadgetCentres) {
  const Complex c = bowtie_grid();
  const Mesh m(c);
  // An interior grid vertex whose four cells are all bowties.
  const int v = 1 + 3 + 7 * 3;
  EXPECT_EQ(m.degree(v), 10);
  EXPECT_EQ(m.effective_degree(v), 4);
}

TEST(Mesh, TorusWrapsAntisymmetric) {
  const Complex c = torus_hex();
  const Mesh m(c);
  for (const auto& [a, b] : m.edges()) EXPECT_EQ(m.wrap(a, b), -m.wrap(b, a));
  for (int v : m.ids()) EXPECT_EQ(m.degree(v), 6);
}
