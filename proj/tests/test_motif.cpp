#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "rosette/motif.hpp"

using namespace rosette;

namespace {

constexpr double pi = std::numbers::pi;

/// Inner vertices of a skip-s wheel star, one per chord.
std::vector<Vec2> inner_vertices(const Motif& m) {
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < m.size(); i += 2) out.push_back(m[i].b);
  return out;
}

std::vector<Vec2> edge_midpoints(const std::vector<Vec2>& poly) {
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < poly.size(); ++i) out.push_back(midpoint(poly[i], poly[(i + 1) % poly.size()]));
  return out;
}

double nearest(Vec2 p, const std::vector<Vec2>& set) {
  double best = 1e300;
  for (Vec2 q : set) best = std::min(best, distance(p, q));
  return best;
}

template <class F>
void expect_code(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "no exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(Alpha, ConsecutiveApproachesOneForSmallAngles) {
  for (int n : {3, 6, 12}) EXPECT_NEAR(alpha_from_theta_consecutive(n, 1e-9), 1.0, 1e-8);
}

TEST(Alpha, ConsecutiveNineGon) { EXPECT_NEAR(alpha_from_theta_consecutive(9, 2.0 * pi / 5.0), 0.4717, 5e-5); }

TEST(Alpha, SkipIsOneAtTheZeroDepthAngle) {
  for (int n : {5, 8, 10, 16}) EXPECT_DOUBLE_EQ(alpha_from_theta_skip(n, pi / n), 1.0);
}

TEST(Alpha, SkipTenGonMatchesSecondIntersection) {
  const double alpha = alpha_from_theta_skip(10, 2.0 * pi / 5.0);
  EXPECT_NEAR(alpha, 1.0 - 2.0 * std::sin(pi / 10.0), 1e-12);
  const auto star = oracle::pic_star_regular(10, 2.0 * pi / 5.0, 2);
  const double midpoint_radius = std::cos(pi / 10.0);
  EXPECT_NEAR(norm(star[0]) / midpoint_radius, alpha, 1e-12);
  EXPECT_GT(std::abs(alpha_skip_as_printed(10, 2.0 * pi / 5.0) - alpha), 1e-3);
}

TEST(Alpha, RejectsBadAngles) {
  expect_code(ErrorCode::IncompatibleAngle, [] { alpha_from_theta_skip(6, 0.5); });
  expect_code(ErrorCode::IncompatibleAngle, [] { alpha_from_theta_skip(10, 0.0); });
  expect_code(ErrorCode::IncompatibleAngle, [] { alpha_from_theta_consecutive(6, pi / 2.0); });
  expect_code(ErrorCode::IncompatibleAngle, [] { alpha_from_theta_consecutive(6, -0.1); });
  expect_code(ErrorCode::InvalidArgument, [] { alpha_from_theta_skip(4, 1.0); });
  expect_code(ErrorCode::InvalidArgument, [] { alpha_from_theta_consecutive(2, 1.0); });
}

TEST(Alpha, WheelStarsMatchPicOracleOnRegularPolygons) {
  for (int n = 5; n <= 16; ++n) {
    for (double theta : {0.5, 2.0 * pi / 5.0, 1.3}) {
      const auto poly = oracle::regular_polygon(n, 1.0);
      const auto mids = edge_midpoints(poly);
      const double rm = std::cos(pi / n);

      // The consecutive ratio is taken against the circumradius, the skip
      // ratio against the midpoint radius.
      const auto first = oracle::pic_star_regular(n, theta, 1);
      const auto c_star = inner_vertices(wheel_star(mids, {0, 0}, alpha_from_theta_consecutive(n, theta), 1));
      for (Vec2 x : c_star) EXPECT_LT(nearest(x, first), 1e-9) << "n " << n << " theta " << theta;

      if (theta <= pi / n) {
        expect_code(ErrorCode::IncompatibleAngle, [&] { alpha_from_theta_skip(n, theta); });
        continue;
      }
      const auto second = oracle::pic_star_regular(n, theta, 2);
      const auto s_star = inner_vertices(wheel_star(mids, {0, 0}, alpha_from_theta_skip(n, theta) * rm, 2));
      for (Vec2 x : s_star) EXPECT_LT(nearest(x, second), 1e-9) << "n " << n << " theta " << theta;
    }
  }
}

TEST(WheelStar, EvenPointsGiveRegularStar) {
  const int k = 6;
  std::vector<Vec2> pts;
  for (int i = 0; i < 2 * k; ++i) pts.push_back(polar(1.0, i * pi / k));
  const double rho = alpha_from_theta_skip(2 * k, 2.0 * pi / 5.0);
  const Motif m = wheel_star(pts, {0, 0}, rho, 2);
  ASSERT_EQ(m.size(), 4u * k);
  for (const auto& s : m) EXPECT_NEAR(norm(s.b), rho, 1e-12);
  for (std::size_t i = 0; i < m.size(); i += 2) EXPECT_NEAR(distance(m[i].a, m[i].b), distance(m[1].a, m[1].b), 1e-12);
}

TEST(WheelStar, DegradesGracefullyUnderRadialNoise) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.01, 0.01);
  const int m = 12;
  const double rho = alpha_from_theta_skip(m, 2.0 * pi / 5.0);
  std::vector<Vec2> pts;
  for (int i = 0; i < m; ++i) pts.push_back(polar(1.0 + u(rng), i * 2.0 * pi / m));
  const Motif star = wheel_star(pts, {0, 0}, rho, 2);
  for (const auto& s : star) EXPECT_NEAR(norm(s.b), rho, 0.02 * rho);
}

TEST(WheelStar, MidpointAtCentreIsDistortion) {
  // Points 0 and 2 are diametrically opposite, so chord 0 -> 2 is bisected at o.
  const std::vector<Vec2> pts{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {0.7, -0.7}};
  expect_code(ErrorCode::StarDistortion, [&] { wheel_star(pts, {0, 0}, 0.5, 2); });
}

TEST(WheelStar, DiameterChordThroughCentreStillResolves) {
  // Chord 0 -> 2 passes through o but its midpoint does not sit on o.
  const std::vector<Vec2> pts{{1, 0}, {0.2, 0.98}, {-0.5, 0}, {-0.3, -0.95}, {0.6, -0.8}};
  const Motif m = wheel_star(pts, {0, 0}, 0.3, 2);
  EXPECT_NEAR(norm(m[0].b), 0.3, 1e-12);
  EXPECT_LT(distance(m[0].b, Vec2{0.25, 0}), distance(Vec2{-0.3, 0}, Vec2{0.25, 0}) + 1e-12);
}

TEST(WheelStar, BisectorMissingTheCircleIsDistortion) {
  std::vector<Vec2> pts;
  for (int i = 0; i < 10; ++i) pts.push_back(polar(1.0, i * pi / 5.0));
  pts[1] = polar(0.5, pi / 5.0);
  try {
    wheel_star(pts, {0, 0}, 0.01, 2);
    FAIL();
  } catch (const StarDistortion& e) {
    EXPECT_GE(e.index(), 0);
  }
}

TEST(WheelStar, NeedsEnoughPoints) {
  const std::vector<Vec2> pts{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  expect_code(ErrorCode::InvalidArgument, [&] { wheel_star(pts, {0, 0}, 0.5, 2); });
  expect_code(ErrorCode::InvalidArgument, [&] { wheel_star(pts, {0, 0}, 0.0, 1); });
}

TEST(StarInCyclicPolygon, RegularTwelveGonHasTwelveFoldSymmetry) {
  const auto poly = oracle::regular_polygon(12, 0.8);
  const Motif m = star_in_cyclic_polygon(poly, {0, 0}, 2.0 * pi / 5.0);
  ASSERT_EQ(m.size(), 24u);
  const auto inner = inner_vertices(m);
  for (std::size_t i = 0; i < inner.size(); ++i) {
    EXPECT_LT(distance(rotate(inner[i], pi / 6.0), inner[(i + 1) % inner.size()]), 1e-12);
  }
}

TEST(StarInCyclicPolygon, ContactAngleIsTheta) {
  for (double theta : {2.0 * pi / 5.0, 1.0}) {
    const auto poly = oracle::regular_polygon(12, 0.8);
    const Motif m = star_in_cyclic_polygon(poly, {0, 0}, theta);
    for (std::size_t i = 0; i < m.size(); i += 2) {
      const std::size_t e = (i / 2) % 12;
      const Vec2 edge = poly[(e + 1) % 12] - poly[e];
      const double a = std::acos(std::abs(dot(normalized(edge), normalized(m[i].b - m[i].a))));
      EXPECT_NEAR(a, theta, 0.5 * pi / 180.0);
    }
  }
}

TEST(StarInCyclicPolygon, ThirteenGonGivesOddStar) {
  std::vector<Vec2> poly;
  for (int i = 0; i < 13; ++i) poly.push_back(polar(0.8, i * 2.0 * pi / 13.0 + 0.01 * std::sin(i)));
  const Motif m = star_in_cyclic_polygon(poly, {0, 0}, 2.0 * pi / 5.0);
  EXPECT_EQ(m.size(), 26u);
}

TEST(StarInCyclicPolygon, AlphaOverride) {
  const auto poly = oracle::regular_polygon(12, 1.0);
  const Motif m = star_in_cyclic_polygon(poly, {0, 0}, 2.0 * pi / 5.0, 0.75);
  EXPECT_NEAR(norm(m[0].b), 0.75 * std::cos(pi / 12.0), 1e-12);
  expect_code(ErrorCode::InvalidArgument, [&] { star_in_cyclic_polygon(poly, {0, 0}, 1.0, 1.5); });
}

TEST(Pic, RegularPentagonGivesPerfectPentacle) {
  const auto poly = oracle::regular_polygon(5, 1.0, 0.3);
  const PicMotif m = pic_motif(poly, uniform_angles(5, 2.0 * pi / 5.0));
  EXPECT_FALSE(m.fallback);
  ASSERT_EQ(m.pairs.size(), 5u);
  const auto mids = edge_midpoints(poly);
  const auto oracle_pts = oracle::pic_star_regular(5, 2.0 * pi / 5.0, 1, 1.0);
  for (const auto& pr : m.pairs) {
    double best = 1e300;
    for (Vec2 q : oracle_pts) best = std::min(best, distance(pr.meet, rotate(q, 0.3)));
    EXPECT_LT(best, 1e-9);
  }
  // Regular pentacle: every segment lies on a line through two midpoints.
  const Motif segs = segments_of(m, poly);
  ASSERT_EQ(segs.size(), 10u);
  for (const auto& s : segs) {
    bool on_chord = false;
    for (std::size_t j = 0; j < 5; ++j) {
      const Vec2 a = mids[j], b = mids[(j + 2) % 5];
      on_chord = on_chord || (std::abs(cross(b - a, s.a - a)) < 1e-9 && std::abs(cross(b - a, s.b - a)) < 1e-9);
    }
    EXPECT_TRUE(on_chord);
  }
}

TEST(Pic, SquareAtQuarterTurnGivesRotatedSquare) {
  const std::vector<Vec2> sq{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  const PicMotif m = pic_motif(sq, uniform_angles(4, pi / 4.0));
  ASSERT_EQ(m.pairs.size(), 4u);
  // Each meet is the corner of the half-size square through the midpoints.
  std::vector<Vec2> meets;
  for (const auto& pr : m.pairs) meets.push_back(pr.meet);
  const std::vector<Vec2> expected{{0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}, {-0.5, -0.5}};
  for (Vec2 e : expected) EXPECT_LT(nearest(e, meets), 1e-12);
}

TEST(Pic, FallbackWhenAdjacentRaysMeetOutside) {
  // A long thin hexagon: adjacent rays on the short edges leave the polygon.
  const std::vector<Vec2> hex{{0, 0}, {4, 0}, {4.2, 0.3}, {4, 0.6}, {0, 0.6}, {-0.2, 0.3}};
  const PicMotif m = pic_motif(hex, uniform_angles(6, 1.2));
  for (const auto& pr : m.pairs) EXPECT_TRUE(point_in_polygon(pr.meet, hex, 1e-9));
  std::vector<int> used;
  for (const auto& pr : m.pairs) {
    used.push_back(pr.first);
    used.push_back(pr.second);
  }
  std::sort(used.begin(), used.end());
  for (int i = 0; i < 12; ++i) EXPECT_EQ(used[static_cast<std::size_t>(i)], i);
}

TEST(Pic, RequiresOneAnglePairPerEdge) {
  const auto poly = oracle::regular_polygon(5);
  expect_code(ErrorCode::InvalidArgument, [&] { pic_motif(poly, uniform_angles(4, 1.0)); });
}

TEST(Continuation, RaysContinueNeighbourSegmentsStraight) {
  const Vec2 p{0, 0}, q{2, 0};
  const Vec2 m{1, 0};
  // Neighbour segments below the edge, ending at its midpoint.
  const std::vector<Segment> nb{{{0.2, -0.7}, m}, {{1.5, -0.9}, m}};
  const auto rays = continuation_rays(p, q, nb, 1e-12);
  ASSERT_TRUE(rays.has_value());
  const Vec2 d{1, 0};
  const Vec2 fwd = rotate(d, rays->forward), bwd = rotate(-d, -rays->backward);
  const Vec2 s0 = normalized(m - Vec2{0.2, -0.7}), s1 = normalized(m - Vec2{1.5, -0.9});
  EXPECT_NEAR(cross(fwd, s0), 0.0, 1e-12);
  EXPECT_GT(dot(fwd, s0), 0.0);
  EXPECT_NEAR(cross(bwd, s1), 0.0, 1e-12);
  EXPECT_GT(dot(bwd, s1), 0.0);
  EXPECT_FALSE(continuation_rays(p, q, std::vector<Segment>{nb[0]}, 1e-12).has_value());
}

namespace {

/// Barrel hexagon with flank vertices 0 and 3 at distance `half_gap` below
/// and above the centre, facing each other.
std::vector<Vec2> barrel(double half_gap) {
  return {{0, -half_gap}, {1, -0.6}, {1, 0.6}, {0, half_gap}, {-1, 0.6}, {-1, -0.6}};
}

}  // namespace

TEST(HexagonFix, WideHexagonIsUntouched) {
  const auto hex = barrel(1.5);
  PicMotif m = pic_motif(hex, uniform_angles(6, 2.0 * pi / 5.0));
  const PicMotif before = m;
  EXPECT_FALSE(fix_bowtie_hexagon(m, hex, 0, 3));
  EXPECT_EQ(m, before);
}

TEST(HexagonFix, ThinHexagonGetsStraightStrokesAndIsIdempotent) {
  const auto hex = barrel(0.7);
  PicMotif m = pic_motif(hex, uniform_angles(6, 2.0 * pi / 5.0));
  ASSERT_TRUE(fix_bowtie_hexagon(m, hex, 0, 3));
  const PicMotif once = m;
  EXPECT_FALSE(fix_bowtie_hexagon(m, hex, 0, 3));
  EXPECT_EQ(m, once);
  int straight = 0;
  for (const auto& pr : m.pairs) straight += pr.straight ? 1 : 0;
  EXPECT_EQ(straight, 2);
  const Motif segs = segments_of(m, hex);
  auto straight_segment = [&](const Segment& s) {
    for (const auto& pr : m.pairs) {
      if (pr.straight && distance(s.a, ray_origin(hex, pr.first)) < 1e-12 && distance(s.b, ray_origin(hex, pr.second)) < 1e-12) {
        return true;
      }
    }
    return false;
  };
  // The two straight strokes form the X; nothing else crosses.
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const bool x = straight_segment(segs[i]) && straight_segment(segs[j]);
      EXPECT_EQ(segments_cross(segs[i].a, segs[i].b, segs[j].a, segs[j].b, 1e-9), x) << i << " " << j;
    }
  }
  // Every edge midpoint keeps exactly two stroke ends.
  for (Vec2 mid : edge_midpoints(hex)) {
    int ends = 0;
    for (const auto& s : segs) ends += (distance(s.a, mid) < 1e-12) + (distance(s.b, mid) < 1e-12);
    EXPECT_EQ(ends, 2);
  }
}
