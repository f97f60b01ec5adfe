#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "journeynet/geo.hpp"
#include "journeynet/network.hpp"
#include "journeynet/region.hpp"

namespace journeynet {

// ---------------------------------------------------------------------------
// File readers and writers. Every CSV has a header row; see FORMATS.md.

struct EventRows {
  std::vector<JourneyEvent> events;  ///< one per data row, in file order
  std::vector<std::size_t> line;     ///< source line of each row
};

/// origin_region,dest_region,period,count
EventRows read_events(const std::string& path, bool fips_mode = false);
/// Boundary file: a GeoJSON FeatureCollection (features carry a `region_id`
/// property, Polygon/MultiPolygon geometry in lon-lat order) or a CSV with
/// region_id,ring_index,vertex_index,lat,lon. Chosen by content: a file whose
/// first non-space character is '{' is JSON.
BoundaryMap read_boundaries(const std::string& path, bool fips_mode = false);
BoundaryMap parse_geojson_boundaries(std::istream& in, const std::string& source, bool fips_mode = false);
/// region_id,population,urbanicity,employed,poverty[,<demographic share>...]
AttributeMap read_attributes(const std::string& path, bool fips_mode = false);
/// region_id,window,coverage
CoverageTable read_coverage(const std::string& path, bool fips_mode = false);

void write_events(std::ostream& out, const std::vector<JourneyEvent>& events);
void write_boundaries(std::ostream& out, const BoundaryMap& boundaries);
void write_attributes(std::ostream& out, const AttributeMap& attrs);
void write_coverage(std::ostream& out, const CoverageTable& coverage);

// ---------------------------------------------------------------------------
// Dataset loading with coverage-based exclusion

struct InputPaths {
  std::string events;
  std::string boundaries;
  std::string attributes;
  std::optional<std::string> coverage;
};

struct LoadOptions {
  double beta = 0.75;
  /// Require five-character region ids in every file.
  bool fips_mode = false;
};

struct ExclusionRecord {
  std::string kind;     ///< "region", "event" or "merge"
  std::string subject;  ///< region id or "file:line"
  std::string reason;

  friend bool operator==(const ExclusionRecord&, const ExclusionRecord&) = default;
};

struct Provenance {
  std::map<std::string, std::string> files;  ///< role -> path
  std::size_t event_rows = 0;
  std::size_t events_retained = 0;
  std::size_t events_excluded = 0;
  std::size_t events_merged = 0;
  std::vector<ExclusionRecord> log;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Dataset {
  std::vector<JourneyEvent> events;  ///< merged, sorted by (origin, destination, period)
  BoundaryMap boundaries;            ///< retained regions only
  AttributeMap attributes;           ///< retained regions only
  CoverageTable coverage;
  std::set<std::string> excluded_regions;
  Provenance provenance;
};

/// Parses all inputs, merges duplicate (origin, destination, period) rows,
/// drops regions whose minimum coverage over all windows is below `beta`
/// together with their events, and enforces that every remaining event
/// endpoint has attributes and a boundary (Error{IntegrityError} otherwise).
/// Without a coverage file nothing is excluded.
Dataset load(const InputPaths& paths, const LoadOptions& opts = {});

struct ValidationReport {
  std::vector<std::string> orphan_regions;    ///< retained but never in an event
  std::vector<std::string> zero_population;
  std::vector<std::string> share_violations;  ///< "region:column"
  std::size_t duplicate_rows_merged = 0;

  bool clean() const noexcept {
    return orphan_regions.empty() && zero_population.empty() && share_violations.empty() &&
           duplicate_rows_merged == 0;
  }
};

ValidationReport validate(const Dataset& dataset);

}  // namespace journeynet
