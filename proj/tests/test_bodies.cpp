#include <cmath>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "ivm/bodies.hpp"
#include "ivm/errors.hpp"
#include "ivm/min_norm_point.hpp"
#include "test_support.hpp"

namespace ivm {
namespace {

using testing::square;

VPolytope parse(const std::string& text) {
  std::istringstream in(text);
  return read_body(in, "inline");
}

TEST(BodyFile, SinglePoint) {
  const VPolytope b = parse("d 2\nn 1\n0 0\n");
  EXPECT_EQ(b.ambient_dim(), 2u);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b.vertex(0), (Vector{0.0, 0.0}));
}

TEST(BodyFile, CommentsBlankLinesCrlfScientific) {
  const VPolytope b = parse("# header\r\n\r\nd 2 # dim\r\nn 2\r\n# between\r\n1e-3 -2.5E+1\r\n  3 4  \r\n");
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b.vertex(0), (Vector{1e-3, -25.0}));
  EXPECT_EQ(b.vertex(1), (Vector{3.0, 4.0}));
}

TEST(BodyFile, ErrorsCarryLineNumbers) {
  try {
    parse("d 2\nn 2\n0 0\n1 2 3\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_THROW(parse("d 2\nn 2\n0 0\n"), ParseError);
  EXPECT_THROW(parse("d 2\nn 1\n0 0\n1 1\n"), ParseError);
  EXPECT_THROW(parse("n 1\n0 0\n"), ParseError);
  EXPECT_THROW(parse("d 2\nn 1\n0 x\n"), ParseError);
  EXPECT_THROW(parse("d 0\nn 1\n\n"), ParseError);
}

TEST(BodyFile, RoundTripIsBitExact) {
  auto s = testing::gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const VPolytope b = testing::random_body(s, 3, 5, 1e3 * s.uniform());
    std::stringstream io;
    write_body(io, b);
    EXPECT_EQ(read_body(io), b);
  }
  const auto path = std::filesystem::temp_directory_path() / "ivm_body_roundtrip.txt";
  const VPolytope b = testing::random_body(s, 3, 5);
  save_body(b, path);
  EXPECT_EQ(load_body(path), b);
  std::filesystem::remove(path);
  EXPECT_THROW(load_body(path), IoError);
}

TEST(VPolytope, Validation) {
  EXPECT_THROW(VPolytope(2, {}), DomainError);
  EXPECT_THROW(VPolytope(2, {{0.0, 0.0, 0.0}}), DimensionMismatch);
  EXPECT_THROW(VPolytope(2, {{0.0, NAN}}), DomainError);
}

TEST(BoundingRadius, Examples) {
  EXPECT_NEAR(bounding_radius(square()), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(bounding_radius(VPolytope::point({3.0, 4.0})), 5.0);
  auto s = testing::gen(4);
  for (int trial = 0; trial < 50; ++trial) {
    const VPolytope b = testing::random_body(s, 3, 6);
    const Vector t = testing::random_vector(s, 3);
    EXPECT_LE(bounding_radius(b.translated(t)), bounding_radius(b) + norm(t) + 1e-12);
  }
}

TEST(Support, Examples) {
  const Vector diag{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  EXPECT_NEAR(support(square(), diag), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(support(square(), Vector{0.0, 0.0}), 0.0);
  auto s = testing::gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const VPolytope b = testing::random_body(s, 3, 7);
    const Vector t = testing::random_vector(s, 3), u = testing::random_vector(s, 3);
    EXPECT_NEAR(support(b.translated(t), u), support(b, u) + dot(t, u), 1e-12);
  }
}

TEST(DistanceToHull, SquareExamples) {
  EXPECT_NEAR(distance_to_hull(Vector{2.0, 0.0}, square()), 1.0, 1e-9);
  EXPECT_NEAR(distance_to_hull(Vector{0.3, 0.6}, square()), 0.0, 1e-9);
  EXPECT_NEAR(distance_to_hull(Vector{2.0, 2.0}, square()), std::sqrt(2.0), 1e-9);
}

TEST(DistanceToHull, MatchesEdgeOracleOnRandomPolygons) {
  auto s = testing::gen(6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pts = testing::random_polygon_points(s);
    const VPolytope body(2, pts);
    const Ring ring = hull_2d(std::span<const Vector>(pts));
    const Vector p{3.0 * s.gaussian(), 3.0 * s.gaussian()};
    EXPECT_NEAR(distance_to_hull(p, body), testing::polygon_distance(ring, {p[0], p[1]}), 1e-9);
  }
}

TEST(MinNormPoint, CertifiedGapAndFeasiblePoint) {
  auto s = testing::gen(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 6;
    const VPolytope b = testing::random_body(s, d, 3 + trial % 20);
    const Vector q = testing::random_vector(s, d, 2.0);
    const MinNormPoint r = min_norm_point(b.vertices(), q, 1e-9);
    EXPECT_LE(r.gap, 1e-9);
    EXPECT_NEAR(r.distance, norm(subtract(r.point, q)), 1e-12);
    // Optimality: no vertex improves along the segment from the returned point.
    const Vector g = subtract(r.point, q);
    for (const auto& v : b.vertices()) EXPECT_GE(dot(g, subtract(v, r.point)), -1e-8);
  }
}

TEST(Membership, Examples) {
  for (const auto& v : square().vertices()) EXPECT_TRUE(membership(v, square()));
  EXPECT_TRUE(membership(centroid(square()), square()));
  EXPECT_FALSE(membership(Vector{1.5, 0.5}, square()));
  auto s = testing::gen(8);
  for (int trial = 0; trial < 50; ++trial) {
    const VPolytope b = testing::random_body(s, 4, 6);
    EXPECT_TRUE(membership(centroid(b), b));
  }
}

TEST(LineFiber, Examples) {
  const Interval f = line_fiber(square(), Vector{0.5, 0.5}, Vector{1.0, 0.0});
  ASSERT_FALSE(f.empty);
  EXPECT_NEAR(f.lo, -0.5, 2e-9);
  EXPECT_NEAR(f.hi, 0.5, 2e-9);
  EXPECT_TRUE(line_fiber(square(), Vector{0.5, 3.0}, Vector{1.0, 0.0}).empty);
  const VPolytope seg(2, {{-1.0, 0.0}, {2.0, 0.0}});
  EXPECT_NEAR(line_fiber(seg, Vector{0.0, 0.0}, Vector{1.0, 0.0}).length(), 3.0, 2e-9);
}

TEST(LineFiber, MatchesClipOracleOnRandomPolygons) {
  auto s = testing::gen(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pts = testing::random_polygon_points(s);
    const Ring ring = hull_2d(std::span<const Vector>(pts));
    const double y = -1.5 + 3.0 * s.uniform();
    // Horizontal line y = const: intersect each edge.
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const Point2 a = ring[i], b = ring[(i + 1) % ring.size()];
      if ((a.y - y) * (b.y - y) > 0.0 || a.y == b.y) continue;
      const double x = a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    const Interval f = line_fiber(VPolytope(2, pts), Vector{0.0, y}, Vector{1.0, 0.0});
    if (lo > hi || hi - lo < 1e-6) continue;
    ASSERT_FALSE(f.empty);
    // The fiber is that of the body grown by the membership tolerance: it
    // covers the exact chord and its endpoints stay within tolerance.
    EXPECT_LE(f.lo, lo + 2e-9);
    EXPECT_GE(f.hi, hi - 2e-9);
    EXPECT_LE(testing::polygon_distance(ring, {f.lo, y}), 1e-9 + 2e-9);
    EXPECT_LE(testing::polygon_distance(ring, {f.hi, y}), 1e-9 + 2e-9);
  }
}

TEST(Diameter, Square) { EXPECT_NEAR(diameter(square()), std::sqrt(2.0), 1e-15); }

}  // namespace
}  // namespace ivm
