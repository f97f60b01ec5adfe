#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "journeynet/error.hpp"
#include "journeynet/geo.hpp"

using namespace journeynet;

namespace {

RegionBoundary square(const std::string& id, double lat0, double lon0, double side = 1.0) {
  return normalize_boundary({id, {{{lat0, lon0}, {lat0, lon0 + side}, {lat0 + side, lon0 + side}, {lat0 + side, lon0}}}});
}

double brute_min(const RegionBoundary& a, const RegionBoundary& b) {
  double best = 1e300;
  for (const auto& p : boundary_samples(a)) {
    for (const auto& q : boundary_samples(b)) best = std::min(best, haversine_km(p, q));
  }
  return best;
}

}  // namespace

TEST(Haversine, IdenticalPointsAreZero) { EXPECT_DOUBLE_EQ(haversine_km({0, 0}, {0, 0}), 0.0); }

TEST(Haversine, AntipodalIsHalfCircumference) {
  EXPECT_NEAR(haversine_km({0, 0}, {0, 180}), std::numbers::pi * kEarthRadiusKm, 0.1);
}

TEST(Haversine, EquatorToPoleIsQuarterCircumference) {
  EXPECT_NEAR(haversine_km({0, 0}, {90, 0}), std::numbers::pi * kEarthRadiusKm / 2, 0.1);
}

TEST(Haversine, Symmetric) {
  const GeoPoint a{41.2, -73.9}, b{-33.9, 151.2};
  EXPECT_DOUBLE_EQ(haversine_km(a, b), haversine_km(b, a));
}

TEST(NormalizeBoundary, ClosesOpenRing) {
  const auto b = square("A", 0, 0);
  ASSERT_EQ(b.rings.size(), 1u);
  EXPECT_EQ(b.rings[0].front(), b.rings[0].back());
}

TEST(NormalizeBoundary, RejectsTwoVertexRing) {
  try {
    normalize_boundary({"A", {{{0, 0}, {0, 1}}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateBoundary);
  }
}

TEST(NormalizeBoundary, RejectsOutOfRangeLatitude) {
  EXPECT_THROW(normalize_boundary({"A", {{{0, 0}, {0, 1}, {200, 1}}}}), Error);
}

TEST(BoundaryBounds, SelfPairSpansZeroToDiameter) {
  const auto a = square("A", 0, 0);
  const auto d = boundary_distance_bounds(a, a);
  EXPECT_DOUBLE_EQ(d.lower_km, 0.0);
  EXPECT_NEAR(d.upper_km, haversine_km({0, 0}, {1, 1}), 1e-9);
}

TEST(BoundaryBounds, TouchingSquaresHaveZeroLowerBound) {
  const auto d = boundary_distance_bounds(square("A", 0, 0), square("B", 0, 1));
  EXPECT_NEAR(d.lower_km, 0.0, 1e-9);
}

TEST(BoundaryBounds, OneDegreeGapMatchesEquatorialArc) {
  const auto a = square("A", 0, 0);
  const auto b = square("B", 0, 2);
  const auto d = boundary_distance_bounds(a, b);
  EXPECT_NEAR(d.lower_km, std::numbers::pi * kEarthRadiusKm / 180.0, 0.5);
  EXPECT_NEAR(d.lower_km, brute_min(a, b), 1e-9);
  EXPECT_NEAR(d.upper_km, haversine_km({0, 0}, {1, 3}), 1e-6);
}

TEST(BoundaryBounds, DensificationAddsInteriorEdgePoints) {
  const auto a = square("A", 0, 0);
  EXPECT_GT(boundary_samples(a).size(), 4u);
  EXPECT_EQ(boundary_samples(a, {0.0}).size(), 4u);
}

TEST(IntervalTable, EmptyRequestGivesEmptyTable) {
  BoundaryMap m{{"A", square("A", 0, 0)}};
  EXPECT_TRUE(interval_table(m, std::vector<RegionPair>{}).empty());
}

TEST(IntervalTable, SinglePairMatchesDirectCall) {
  BoundaryMap m{{"A", square("A", 0, 0)}, {"B", square("B", 3, 3)}};
  const std::vector<RegionPair> req{{"A", "B"}};
  const auto t = interval_table(m, req);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.at({"A", "B"}), boundary_distance_bounds(m.at("A"), m.at("B")));
}

TEST(IntervalTable, ThreeRegionsSymmetricAndBruteForce) {
  BoundaryMap m{{"A", square("A", 0, 0)}, {"B", square("B", 0, 1)}, {"C", square("C", 2, 5, 0.5)}};
  std::vector<RegionPair> req{{"A", "B"}, {"A", "C"}, {"B", "C"}, {"B", "A"}, {"C", "A"}, {"C", "B"}};
  const auto t = interval_table(m, req);
  EXPECT_EQ(t.size(), 6u);
  for (const auto& [pair, interval] : t) {
    EXPECT_EQ(interval, t.at({pair.second, pair.first}));
    EXPECT_NEAR(interval.lower_km, brute_min(m.at(pair.first), m.at(pair.second)), 1e-9);
  }
}

TEST(IntervalTable, UnknownRegionThrowsMissingRegion) {
  BoundaryMap m{{"A", square("A", 0, 0)}};
  const std::vector<RegionPair> req{{"A", "Z"}};
  try {
    interval_table(m, req);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingRegion);
  }
}

TEST(AdjacentPairs, GridNeighboursOnly) {
  BoundaryMap m{{"A", square("A", 0, 0)}, {"B", square("B", 0, 1)}, {"C", square("C", 0, 5)}, {"D", square("D", 1, 1)}};
  const auto pairs = adjacent_pairs(m);
  const std::vector<RegionPair> expected{{"A", "B"}, {"A", "D"}, {"B", "D"}};
  EXPECT_EQ(pairs, expected);
}
