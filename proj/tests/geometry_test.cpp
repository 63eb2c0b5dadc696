#include <gtest/gtest.h>

#include <vector>

#include "bodyttc/geometry.hpp"
#include "bodyttc/rng.hpp"

using namespace bodyttc;

namespace {

const std::vector<Vec2> kUnitSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};

}  // namespace

TEST(Geometry, SignedAreaFollowsOrientation) {
  EXPECT_DOUBLE_EQ(signed_area(kUnitSquare), 1.0);
  const std::vector<Vec2> cw(kUnitSquare.rbegin(), kUnitSquare.rend());
  EXPECT_DOUBLE_EQ(signed_area(cw), -1.0);
}

TEST(Geometry, PerimeterAndCentroid) {
  EXPECT_DOUBLE_EQ(perimeter(kUnitSquare), 4.0);
  const Vec2 c = area_centroid(std::vector<Vec2>{{0, 0}, {4, 0}, {4, 2}, {0, 2}});
  EXPECT_DOUBLE_EQ(c.x, 2.0);
  EXPECT_DOUBLE_EQ(c.y, 1.0);
}

TEST(Geometry, SegmentsIntersectIncludesTouching) {
  EXPECT_TRUE(segments_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0}));
  EXPECT_TRUE(segments_intersect({0, 0}, {1, 0}, {1, 0}, {2, 5}));
  EXPECT_TRUE(segments_intersect({0, 0}, {2, 0}, {1, 0}, {3, 0}));
  EXPECT_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  EXPECT_FALSE(segments_intersect({0, 0}, {1, 0}, {2, 0}, {3, 0}));
}

TEST(Geometry, SimplicityCheck) {
  EXPECT_TRUE(is_simple(kUnitSquare));
  const std::vector<Vec2> bowtie{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  EXPECT_FALSE(is_simple(bowtie));
  const std::vector<Vec2> spike{{0, 0}, {2, 0}, {1, 0}, {1, 1}};  // edge folds back on itself
  EXPECT_FALSE(is_simple(spike));
  const std::vector<Vec2> notch{{0, 0}, {3, 0}, {3, 3}, {2, 3}, {2, 1}, {1, 1}, {1, 3}, {0, 3}};
  EXPECT_TRUE(is_simple(notch));
}

TEST(Geometry, LocatePoint) {
  EXPECT_EQ(locate_point({0.5, 0.5}, kUnitSquare), Containment::inside);
  EXPECT_EQ(locate_point({1.0, 0.5}, kUnitSquare), Containment::boundary);
  EXPECT_EQ(locate_point({0.0, 0.0}, kUnitSquare), Containment::boundary);
  EXPECT_EQ(locate_point({1.5, 0.5}, kUnitSquare), Containment::outside);
}

TEST(Geometry, PolygonsIntersect) {
  const auto shifted = [](double dx) { return translated(kUnitSquare, {dx, 0.0}); };
  EXPECT_TRUE(polygons_intersect(kUnitSquare, shifted(0.5)));
  EXPECT_TRUE(polygons_intersect(kUnitSquare, shifted(1.0)));  // shared edge
  EXPECT_FALSE(polygons_intersect(kUnitSquare, shifted(1.001)));
  const std::vector<Vec2> big{{-5, -5}, {5, -5}, {5, 5}, {-5, 5}};
  EXPECT_TRUE(polygons_intersect(kUnitSquare, big));  // containment, no edge crossing
}

TEST(Geometry, ClipHalfPlaneKeepsPositiveSide) {
  const auto clipped = clip_half_plane(kUnitSquare, {1.0, 0.0}, 0.25);
  EXPECT_NEAR(signed_area(clipped), 0.75, 1e-12);
  for (const Vec2& p : clipped) EXPECT_GE(p.x, 0.25 - 1e-12);
}

TEST(Geometry, BoundaryDistance) {
  EXPECT_DOUBLE_EQ(boundary_distance({0.5, 0.25}, kUnitSquare), 0.25);
  EXPECT_DOUBLE_EQ(point_segment_distance({3, 4}, {0, 0}, {0, 0}), 5.0);
}

TEST(Geometry, RandomTrianglesAreSimple) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    std::vector<Vec2> t{{rng.uniform(-5, 5), rng.uniform(-5, 5)},
                        {rng.uniform(-5, 5), rng.uniform(-5, 5)},
                        {rng.uniform(-5, 5), rng.uniform(-5, 5)}};
    if (std::abs(signed_area(t)) < 1e-3) continue;
    EXPECT_TRUE(is_simple(t));
  }
}
