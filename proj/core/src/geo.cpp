#include "journeynet/geo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "journeynet/error.hpp"

namespace journeynet {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

using Vec3 = std::array<double, 3>;

Vec3 to_unit(const GeoPoint& p) {
  const double lat = p.lat * kDegToRad;
  const double lon = p.lon * kDegToRad;
  return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

double chord2(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

struct SampledBoundary {
  std::vector<GeoPoint> points;
  std::vector<Vec3> unit;
  double min_lat = 90.0, max_lat = -90.0, min_lon = 180.0, max_lon = -180.0;
};

SampledBoundary sample(const RegionBoundary& b, const BoundsOptions& opts) {
  SampledBoundary out;
  out.points = boundary_samples(b, opts);
  out.unit.reserve(out.points.size());
  for (const auto& p : out.points) {
    out.unit.push_back(to_unit(p));
    out.min_lat = std::min(out.min_lat, p.lat);
    out.max_lat = std::max(out.max_lat, p.lat);
    out.min_lon = std::min(out.min_lon, p.lon);
    out.max_lon = std::max(out.max_lon, p.lon);
  }
  return out;
}

// Chord comparisons pick the extreme pairs; the reported value is the
// haversine distance of that pair.
DistanceInterval bounds_of(const SampledBoundary& a, const SampledBoundary& b) {
  double best_min = std::numeric_limits<double>::infinity();
  double best_max = -1.0;
  std::size_t imin = 0, jmin = 0, imax = 0, jmax = 0;
  for (std::size_t i = 0; i < a.unit.size(); ++i) {
    for (std::size_t j = 0; j < b.unit.size(); ++j) {
      const double c = chord2(a.unit[i], b.unit[j]);
      if (c < best_min) {
        best_min = c;
        imin = i;
        jmin = j;
      }
      if (c > best_max) {
        best_max = c;
        imax = i;
        jmax = j;
      }
    }
  }
  DistanceInterval d;
  d.lower_km = best_min == 0.0 ? 0.0 : haversine_km(a.points[imin], b.points[jmin]);
  d.upper_km = haversine_km(a.points[imax], b.points[jmax]);
  if (d.upper_km < d.lower_km) d.upper_km = d.lower_km;
  return d;
}

void check_ring(const std::string& id, const Ring& ring) {
  std::vector<GeoPoint> distinct;
  for (const auto& p : ring) {
    if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) distinct.push_back(p);
    if (distinct.size() >= 3) return;
  }
  throw Error(ErrorKind::DegenerateBoundary,
              "region '" + id + "' has a ring with fewer than 3 distinct vertices");
}

}  // namespace

bool is_valid(const GeoPoint& p) noexcept {
  return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 && p.lat <= 90.0 &&
         p.lon >= -180.0 && p.lon <= 180.0;
}

double haversine_km(const GeoPoint& a, const GeoPoint& b) noexcept {
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double dphi = (b.lat - a.lat) * kDegToRad;
  const double dlambda = (b.lon - a.lon) * kDegToRad;
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  const double h = std::clamp(s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

RegionBoundary normalize_boundary(RegionBoundary boundary) {
  if (boundary.rings.empty()) {
    throw Error(ErrorKind::DegenerateBoundary, "region '" + boundary.region_id + "' has no rings");
  }
  for (auto& ring : boundary.rings) {
    for (const auto& p : ring) {
      if (!is_valid(p)) {
        throw Error(ErrorKind::InvalidArgument,
                    "region '" + boundary.region_id + "' has an out-of-range coordinate");
      }
    }
    check_ring(boundary.region_id, ring);
    if (ring.front() != ring.back()) ring.push_back(ring.front());
  }
  return boundary;
}

std::vector<GeoPoint> boundary_samples(const RegionBoundary& boundary, const BoundsOptions& opts) {
  std::vector<GeoPoint> out;
  for (const auto& ring : boundary.rings) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const GeoPoint& p = ring[i];
      const bool closing = i + 1 == ring.size() && ring.size() > 1 && p == ring.front();
      if (closing) break;
      out.push_back(p);
      const GeoPoint& q = ring[(i + 1) % ring.size()];
      if (opts.densify_step_km <= 0.0) continue;
      const double len = haversine_km(p, q);
      const auto pieces = static_cast<std::size_t>(std::ceil(len / opts.densify_step_km));
      for (std::size_t k = 1; k < pieces; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(pieces);
        out.push_back({p.lat + t * (q.lat - p.lat), p.lon + t * (q.lon - p.lon)});
      }
    }
  }
  return out;
}

DistanceInterval boundary_distance_bounds(const RegionBoundary& a, const RegionBoundary& b,
                                          const BoundsOptions& opts) {
  const auto na = normalize_boundary(a);
  const auto nb = normalize_boundary(b);
  return bounds_of(sample(na, opts), sample(nb, opts));
}

IntervalTable interval_table(const BoundaryMap& boundaries, std::span<const RegionPair> requested,
                             const BoundsOptions& opts) {
  std::map<std::string, SampledBoundary> cache;
  auto sampled = [&](const std::string& id) -> const SampledBoundary& {
    if (auto it = cache.find(id); it != cache.end()) return it->second;
    auto found = boundaries.find(id);
    if (found == boundaries.end()) {
      throw Error(ErrorKind::MissingRegion, "no boundary for region '" + id + "'");
    }
    return cache.emplace(id, sample(normalize_boundary(found->second), opts)).first->second;
  };

  IntervalTable table;
  for (const auto& pair : requested) {
    if (table.contains(pair)) continue;
    const RegionPair reversed{pair.second, pair.first};
    if (auto it = table.find(reversed); it != table.end()) {
      table.emplace(pair, it->second);
      continue;
    }
    const auto& a = sampled(pair.first);
    const auto& b = sampled(pair.second);
    table.emplace(pair, bounds_of(a, b));
  }
  return table;
}

std::vector<RegionPair> adjacent_pairs(const BoundaryMap& boundaries, double tolerance_km,
                                       const BoundsOptions& opts) {
  std::vector<std::pair<const std::string*, SampledBoundary>> sampled;
  sampled.reserve(boundaries.size());
  for (const auto& [id, b] : boundaries) sampled.emplace_back(&id, sample(normalize_boundary(b), opts));

  // Bounding-box prefilter, one degree of slack per kilometre of tolerance.
  // Does not handle boxes straddling the antimeridian.
  const double margin_deg = tolerance_km + 1e-9;
  std::vector<RegionPair> out;
  for (std::size_t i = 0; i < sampled.size(); ++i) {
    const auto& a = sampled[i].second;
    for (std::size_t j = i + 1; j < sampled.size(); ++j) {
      const auto& b = sampled[j].second;
      if (a.max_lat + margin_deg < b.min_lat || b.max_lat + margin_deg < a.min_lat) continue;
      if (a.max_lon + margin_deg < b.min_lon || b.max_lon + margin_deg < a.min_lon) continue;
      if (bounds_of(a, b).lower_km <= tolerance_km) out.emplace_back(*sampled[i].first, *sampled[j].first);
    }
  }
  return out;
}

}  // namespace journeynet
