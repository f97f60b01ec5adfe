#include <cctype>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "journeynet/csv.hpp"
#include "journeynet/error.hpp"
#include "journeynet/ingest.hpp"

namespace journeynet {
namespace {

void check_region_id(const std::string& id, bool fips_mode, const std::string& source, std::size_t row,
                     const std::string& column) {
  if (id.empty()) throw ParseError(source, row, column, "empty region id");
  if (fips_mode && id.size() != 5) throw ParseError(source, row, column, "region id '" + id + "' is not 5 characters");
}

Ring parse_ring(const nlohmann::json& coords, const std::string& source, std::size_t feature) {
  Ring ring;
  for (const auto& pos : coords) {
    if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
      throw ParseError(source, feature, "geometry", "malformed position");
    }
    GeoPoint p{pos[1].get<double>(), pos[0].get<double>()};
    if (!is_valid(p)) throw ParseError(source, feature, "geometry", "coordinate out of range");
    ring.push_back(p);
  }
  return ring;
}

std::string feature_id(const nlohmann::json& props, const std::string& source, std::size_t feature) {
  if (!props.is_object() || !props.contains("region_id")) {
    throw ParseError(source, feature, "region_id", "feature has no region_id property");
  }
  const auto& v = props["region_id"];
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ParseError(source, feature, "region_id", "region_id must be a string or integer");
}

BoundaryMap read_boundaries_csv(const std::string& path, bool fips_mode) {
  const auto t = csv::read_file(path);
  const auto c_id = t.column("region_id");
  const auto c_ring = t.column("ring_index");
  const auto c_vertex = t.column("vertex_index");
  const auto c_lat = t.column("lat");
  const auto c_lon = t.column("lon");
  std::map<std::string, std::map<long long, std::map<long long, GeoPoint>>> grouped;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& id = t.rows[r][c_id];
    check_region_id(id, fips_mode, path, t.line[r], "region_id");
    const double lat = csv::to_double(t, r, c_lat);
    const double lon = csv::to_double(t, r, c_lon);
    if (lat < -90.0 || lat > 90.0) throw ParseError(path, t.line[r], "lat", "latitude outside [-90, 90]");
    if (lon < -180.0 || lon > 180.0) throw ParseError(path, t.line[r], "lon", "longitude outside [-180, 180]");
    auto& ring = grouped[id][csv::to_integer(t, r, c_ring)];
    if (!ring.emplace(csv::to_integer(t, r, c_vertex), GeoPoint{lat, lon}).second) {
      throw ParseError(path, t.line[r], "vertex_index", "duplicate vertex index");
    }
  }
  BoundaryMap out;
  for (auto& [id, rings] : grouped) {
    RegionBoundary b{id, {}};
    for (auto& [ri, verts] : rings) {
      Ring ring;
      for (auto& [vi, p] : verts) ring.push_back(p);
      b.rings.push_back(std::move(ring));
    }
    out.emplace(id, normalize_boundary(std::move(b)));
  }
  return out;
}

}  // namespace

BoundaryMap parse_geojson_boundaries(std::istream& in, const std::string& source, bool fips_mode) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source, 0, "*", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("features") || !doc["features"].is_array()) {
    throw ParseError(source, 0, "features", "expected a FeatureCollection");
  }
  BoundaryMap out;
  std::size_t index = 0;
  for (const auto& f : doc["features"]) {
    ++index;
    const auto id = feature_id(f.value("properties", nlohmann::json::object()), source, index);
    check_region_id(id, fips_mode, source, index, "region_id");
    if (!f.contains("geometry") || !f["geometry"].is_object()) {
      throw ParseError(source, index, "geometry", "feature has no geometry");
    }
    const auto& g = f["geometry"];
    const auto type = g.value("type", std::string{});
    const auto& coords = g["coordinates"];
    RegionBoundary b{id, {}};
    if (type == "Polygon") {
      for (const auto& ring : coords) b.rings.push_back(parse_ring(ring, source, index));
    } else if (type == "MultiPolygon") {
      for (const auto& poly : coords) {
        for (const auto& ring : poly) b.rings.push_back(parse_ring(ring, source, index));
      }
    } else {
      throw ParseError(source, index, "geometry", "unsupported geometry type '" + type + "'");
    }
    auto& slot = out[id];
    if (slot.region_id.empty()) slot.region_id = id;
    for (auto& r : b.rings) slot.rings.push_back(std::move(r));
  }
  for (auto& [id, b] : out) b = normalize_boundary(std::move(b));
  return out;
}

BoundaryMap read_boundaries(const std::string& path, bool fips_mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "*", "cannot open file");
  char c = 0;
  while (in.get(c) && std::isspace(static_cast<unsigned char>(c))) {
  }
  if (c == '{') {
    in.seekg(0);
    return parse_geojson_boundaries(in, path, fips_mode);
  }
  return read_boundaries_csv(path, fips_mode);
}

void write_boundaries(std::ostream& out, const BoundaryMap& boundaries) {
  csv::write_row(out, {"region_id", "ring_index", "vertex_index", "lat", "lon"});
  for (const auto& [id, b] : boundaries) {
    for (std::size_t r = 0; r < b.rings.size(); ++r) {
      for (std::size_t v = 0; v < b.rings[r].size(); ++v) {
        const auto& p = b.rings[r][v];
        csv::write_row(out, {id, std::to_string(r), std::to_string(v), csv::format_number(p.lat),
                             csv::format_number(p.lon)});
      }
    }
  }
}

}  // namespace journeynet
