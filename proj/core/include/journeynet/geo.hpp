#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace journeynet {

/// IUGG mean Earth radius.
inline constexpr double kEarthRadiusKm = 6371.0088;

struct GeoPoint {
  double lat = 0.0;  ///< degrees, [-90, 90]
  double lon = 0.0;  ///< degrees, [-180, 180]

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

bool is_valid(const GeoPoint& p) noexcept;

using Ring = std::vector<GeoPoint>;

/// Areal unit boundary as one or more closed rings (islands allowed).
struct RegionBoundary {
  std::string region_id;
  std::vector<Ring> rings;
};

/// Censored journey length in kilometres: the true value lies in [lower_km, upper_km].
struct DistanceInterval {
  double lower_km = 0.0;
  double upper_km = 0.0;

  friend bool operator==(const DistanceInterval&, const DistanceInterval&) = default;
};

/// Great-circle distance on a sphere of radius kEarthRadiusKm.
double haversine_km(const GeoPoint& a, const GeoPoint& b) noexcept;

/// Closes every ring (appends the first vertex when needed) and validates it.
/// Throws Error{DegenerateBoundary} when a ring has fewer than three distinct
/// vertices, and Error{InvalidArgument} for out-of-range coordinates.
RegionBoundary normalize_boundary(RegionBoundary boundary);

struct BoundsOptions {
  /// Edges longer than this arc length get evenly spaced extra vertices.
  /// Non-positive disables densification.
  double densify_step_km = 5.0;
};

/// Vertex set used for distance scans: all ring vertices plus densified edge
/// points, duplicates (closing vertices) removed.
std::vector<GeoPoint> boundary_samples(const RegionBoundary& boundary, const BoundsOptions& opts = {});

/// [min, max] over all pairs of boundary samples of the haversine distance.
/// The minimum is zero for touching or identical regions.
DistanceInterval boundary_distance_bounds(const RegionBoundary& a, const RegionBoundary& b,
                                          const BoundsOptions& opts = {});

using RegionPair = std::pair<std::string, std::string>;
using IntervalTable = std::map<RegionPair, DistanceInterval>;
using BoundaryMap = std::map<std::string, RegionBoundary>;

/// Bounds for exactly the requested ordered pairs. Throws Error{MissingRegion}
/// if a pair names a region absent from `boundaries`.
IntervalTable interval_table(const BoundaryMap& boundaries, std::span<const RegionPair> requested,
                             const BoundsOptions& opts = {});

/// Unordered region pairs whose boundaries touch (lower bound <= tolerance_km).
std::vector<RegionPair> adjacent_pairs(const BoundaryMap& boundaries, double tolerance_km = 0.01,
                                       const BoundsOptions& opts = {});

}  // namespace journeynet
