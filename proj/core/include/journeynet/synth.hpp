#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "journeynet/geo.hpp"
#include "journeynet/network.hpp"
#include "journeynet/region.hpp"

namespace journeynet::synth {

/// Forced coverage value for one region in one window.
struct CoverageDip {
  std::size_t region = 0;  ///< row-major grid index
  int window = 0;
  double coverage = 0.0;
};

struct GeneratorConfig {
  // Grid of square lat-lon cells, row-major from the south-west corner.
  std::size_t rows = 4;
  std::size_t cols = 4;
  double origin_lat = 0.0;
  double origin_lon = 0.0;
  double cell_deg = 0.5;

  // Pareto(x_min, alpha) populations.
  double population_min = 1000.0;
  double population_alpha = 1.2;

  // Gravity weight pop_u^a * pop_v^b * exp(-d(u, v) / lambda).
  double a = 1.0;
  double b = 1.0;
  double lambda_km = 100.0;
  double self_loop_prob = 0.5;

  int windows = 2;
  int periods_per_window = 3;
  std::size_t events_per_window = 100;
  /// Share of discordant draws in window t > 0 that reuse an edge active in t - 1.
  double persistence = 0.0;

  /// Destination regions whose inbound journeys get weight * attractor_boost
  /// and decay scale lambda * attractor_lambda_scale.
  std::size_t attractors = 0;
  double attractor_boost = 1.0;
  double attractor_lambda_scale = 1.0;

  double coverage_base = 0.95;
  std::vector<CoverageDip> coverage_dips;

  /// Mandatory; generation refuses to guess one.
  std::optional<std::uint64_t> seed;

  std::size_t n_regions() const noexcept { return rows * cols; }
};

/// Throws Error{InvalidConfig} describing the first violated constraint.
void check_config(const GeneratorConfig& config);

struct SyntheticData {
  std::vector<JourneyEvent> events;  ///< aggregated, sorted by (origin, destination, period)
  BoundaryMap boundaries;
  AttributeMap attributes;
  CoverageTable coverage;
  std::vector<std::string> region_ids;  ///< grid order
  std::vector<GeoPoint> centroids;      ///< grid order
  std::vector<std::string> attractors;  ///< sorted
};

/// Region id for grid index `i`: "R" followed by a zero-padded index.
std::string region_id(std::size_t i);

SyntheticData generate(const GeneratorConfig& config);

/// Gravity weight of the ordered pair (u, v), u != v, given populations and
/// the attractor flags of `data`.
double pair_weight(const GeneratorConfig& config, const SyntheticData& data, std::size_t u, std::size_t v);

/// Expected centroid distance of a discordant journey under the generator's
/// mixture, by enumeration over every ordered pair. Persistence is ignored.
double expected_discordant_distance(const GeneratorConfig& config, const SyntheticData& data);

/// Writes events.csv, boundaries.csv, attributes.csv and coverage.csv into `dir`.
void write_dataset(const SyntheticData& data, const std::string& dir);

}  // namespace journeynet::synth
