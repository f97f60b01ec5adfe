#include "journeynet/ingest.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>
#include <ostream>

#include "journeynet/csv.hpp"
#include "journeynet/error.hpp"

namespace journeynet {
namespace {

const std::set<std::string> kAttributeCore = {"region_id", "population", "urbanicity", "employed", "poverty"};

std::string region_field(const csv::Table& t, std::size_t row, std::size_t col, bool fips_mode) {
  const auto& id = t.rows[row][col];
  if (id.empty()) throw ParseError(t.source, t.line[row], t.header[col], "empty region id");
  if (fips_mode && id.size() != 5) {
    throw ParseError(t.source, t.line[row], t.header[col], "region id '" + id + "' is not 5 characters");
  }
  return id;
}

std::string where(const std::string& file, std::size_t line) { return file + ":" + std::to_string(line); }

}  // namespace

EventRows read_events(const std::string& path, bool fips_mode) {
  const auto t = csv::read_file(path);
  const auto c_origin = t.column("origin_region");
  const auto c_dest = t.column("dest_region");
  const auto c_period = t.column("period");
  const auto c_count = t.column("count");
  EventRows out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    JourneyEvent ev;
    ev.origin = region_field(t, r, c_origin, fips_mode);
    ev.destination = region_field(t, r, c_dest, fips_mode);
    const long long period = csv::to_integer(t, r, c_period);
    if (period < std::numeric_limits<int>::min() || period > std::numeric_limits<int>::max()) {
      throw ParseError(path, t.line[r], "period", "period out of range");
    }
    ev.period = static_cast<int>(period);
    const long long count = csv::to_integer(t, r, c_count);
    if (count < 1) throw ParseError(path, t.line[r], "count", "count must be a positive integer");
    ev.count = static_cast<std::uint64_t>(count);
    out.events.push_back(std::move(ev));
    out.line.push_back(t.line[r]);
  }
  return out;
}

AttributeMap read_attributes(const std::string& path, bool fips_mode) {
  const auto t = csv::read_file(path);
  const auto c_id = t.column("region_id");
  const auto c_pop = t.column("population");
  const auto c_urb = t.column("urbanicity");
  const auto c_emp = t.column("employed");
  const auto c_pov = t.column("poverty");
  AttributeMap out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    RegionAttributes a;
    a.region_id = region_field(t, r, c_id, fips_mode);
    const long long pop = csv::to_integer(t, r, c_pop);
    if (pop < 0) throw ParseError(path, t.line[r], "population", "population must be non-negative");
    a.population = static_cast<std::uint64_t>(pop);
    const auto urb = parse_urbanicity(t.rows[r][c_urb]);
    if (!urb) throw ParseError(path, t.line[r], "urbanicity", "unknown urbanicity class '" + t.rows[r][c_urb] + "'");
    a.urbanicity = *urb;
    a.employed = csv::to_double(t, r, c_emp);
    a.poverty = csv::to_double(t, r, c_pov);
    for (std::size_t c = 0; c < t.header.size(); ++c) {
      if (kAttributeCore.contains(t.header[c])) continue;
      a.demographics[t.header[c]] = csv::to_double(t, r, c);
    }
    if (!out.emplace(a.region_id, a).second) {
      throw ParseError(path, t.line[r], "region_id", "duplicate region '" + a.region_id + "'");
    }
  }
  return out;
}

CoverageTable read_coverage(const std::string& path, bool fips_mode) {
  const auto t = csv::read_file(path);
  const auto c_id = t.column("region_id");
  const auto c_window = t.column("window");
  const auto c_cov = t.column("coverage");
  CoverageTable out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto id = region_field(t, r, c_id, fips_mode);
    const auto window = static_cast<int>(csv::to_integer(t, r, c_window));
    const double value = csv::to_double(t, r, c_cov);
    if (value < 0.0 || value > 1.0) throw ParseError(path, t.line[r], "coverage", "coverage outside [0, 1]");
    if (!out[id].emplace(window, value).second) {
      throw ParseError(path, t.line[r], "window", "duplicate (region, window) row");
    }
  }
  return out;
}

void write_events(std::ostream& out, const std::vector<JourneyEvent>& events) {
  csv::write_row(out, {"origin_region", "dest_region", "period", "count"});
  for (const auto& ev : events) {
    csv::write_row(out, {ev.origin, ev.destination, std::to_string(ev.period), std::to_string(ev.count)});
  }
}

void write_attributes(std::ostream& out, const AttributeMap& attrs) {
  std::set<std::string> categories;
  for (const auto& [id, a] : attrs) {
    for (const auto& [cat, v] : a.demographics) categories.insert(cat);
  }
  std::vector<std::string> header{"region_id", "population", "urbanicity", "employed", "poverty"};
  header.insert(header.end(), categories.begin(), categories.end());
  csv::write_row(out, header);
  for (const auto& [id, a] : attrs) {
    std::vector<std::string> row{id, std::to_string(a.population), std::to_string(static_cast<int>(a.urbanicity)),
                                 csv::format_number(a.employed), csv::format_number(a.poverty)};
    for (const auto& cat : categories) {
      auto it = a.demographics.find(cat);
      row.push_back(csv::format_number(it == a.demographics.end() ? 0.0 : it->second));
    }
    csv::write_row(out, row);
  }
}

void write_coverage(std::ostream& out, const CoverageTable& coverage) {
  csv::write_row(out, {"region_id", "window", "coverage"});
  for (const auto& [id, by_window] : coverage) {
    for (const auto& [w, v] : by_window) csv::write_row(out, {id, std::to_string(w), csv::format_number(v)});
  }
}

Dataset load(const InputPaths& paths, const LoadOptions& opts) {
  Dataset ds;
  auto& prov = ds.provenance;
  prov.files["events"] = paths.events;
  prov.files["boundaries"] = paths.boundaries;
  prov.files["attributes"] = paths.attributes;
  if (paths.coverage) prov.files["coverage"] = *paths.coverage;

  const auto rows = read_events(paths.events, opts.fips_mode);
  auto boundaries = read_boundaries(paths.boundaries, opts.fips_mode);
  auto attributes = read_attributes(paths.attributes, opts.fips_mode);
  if (paths.coverage) ds.coverage = read_coverage(*paths.coverage, opts.fips_mode);
  prov.event_rows = rows.events.size();

  // Merge duplicate keys, remembering the first line of each key.
  std::map<std::tuple<std::string, std::string, int>, std::pair<std::uint64_t, std::size_t>> merged;
  for (std::size_t i = 0; i < rows.events.size(); ++i) {
    const auto& ev = rows.events[i];
    auto [it, inserted] = merged.try_emplace({ev.origin, ev.destination, ev.period}, ev.count, rows.line[i]);
    if (!inserted) {
      it->second.first += ev.count;
      ++prov.events_merged;
      prov.log.push_back({"merge", where(paths.events, rows.line[i]),
                          "duplicate of line " + std::to_string(it->second.second) + ", counts summed"});
    }
  }

  std::set<std::string> candidates;
  for (const auto& [id, a] : attributes) candidates.insert(id);
  for (const auto& [key, value] : merged) {
    candidates.insert(std::get<0>(key));
    candidates.insert(std::get<1>(key));
  }
  std::set<std::string> kept = candidates;
  if (paths.coverage) {
    kept = regions_meeting_coverage(ds.coverage, candidates, opts.beta);
    const auto windows = coverage_windows(ds.coverage);
    for (const auto& id : candidates) {
      if (kept.contains(id)) continue;
      ds.excluded_regions.insert(id);
      prov.log.push_back({"region", id,
                          "minimum coverage " + csv::format_number(min_coverage(ds.coverage, id, windows)) +
                              " below beta " + csv::format_number(opts.beta)});
    }
  }

  for (const auto& [key, value] : merged) {
    const auto& [origin, dest, period] = key;
    if (ds.excluded_regions.contains(origin) || ds.excluded_regions.contains(dest)) {
      ++prov.events_excluded;
      const auto& culprit = ds.excluded_regions.contains(origin) ? origin : dest;
      prov.log.push_back({"event", where(paths.events, value.second), "touches excluded region " + culprit});
      continue;
    }
    for (const auto* id : {&origin, &dest}) {
      if (!attributes.contains(*id)) {
        throw Error(ErrorKind::IntegrityError, "region '" + *id + "' (" + where(paths.events, value.second) +
                                                   ") has no attributes row");
      }
      if (!boundaries.contains(*id)) {
        throw Error(ErrorKind::IntegrityError, "region '" + *id + "' (" + where(paths.events, value.second) +
                                                   ") has no boundary");
      }
    }
    ds.events.push_back({origin, dest, period, value.first});
  }
  prov.events_retained = ds.events.size();

  for (auto& [id, a] : attributes) {
    if (!ds.excluded_regions.contains(id)) ds.attributes.emplace(id, std::move(a));
  }
  for (auto& [id, b] : boundaries) {
    if (!ds.excluded_regions.contains(id)) ds.boundaries.emplace(id, std::move(b));
  }
  return ds;
}

ValidationReport validate(const Dataset& dataset) {
  ValidationReport report;
  std::set<std::string> referenced;
  for (const auto& ev : dataset.events) {
    referenced.insert(ev.origin);
    referenced.insert(ev.destination);
  }
  for (const auto& [id, a] : dataset.attributes) {
    if (!referenced.contains(id)) report.orphan_regions.push_back(id);
    if (a.population == 0) report.zero_population.push_back(id);
    auto check = [&](const std::string& column, double v) {
      if (!(v >= 0.0 && v <= 1.0)) report.share_violations.push_back(id + ":" + column);
    };
    check("employed", a.employed);
    check("poverty", a.poverty);
    for (const auto& [cat, v] : a.demographics) check(cat, v);
  }
  report.duplicate_rows_merged = dataset.provenance.events_merged;
  return report;
}

}  // namespace journeynet
