#include "journeynet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "journeynet/error.hpp"
#include "journeynet/ingest.hpp"

namespace journeynet::synth {
namespace {

// Bit-level uniform so the stream does not depend on the standard library's
// distribution implementations.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t draw_index(std::mt19937_64& rng, const std::vector<double>& cumulative) {
  const double u = unit(rng) * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) --it;
  return static_cast<std::size_t>(it - cumulative.begin());
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidConfig, what);
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void check_config(const GeneratorConfig& c) {
  require(c.seed.has_value(), "seed is mandatory");
  require(c.rows > 0 && c.cols > 0, "grid must have at least one row and column");
  require(c.n_regions() >= 2 || c.self_loop_prob == 1.0, "discordant journeys need at least two regions");
  require(c.cell_deg > 0.0, "cell_deg must be positive");
  require(c.origin_lat >= -90.0 && c.origin_lat + c.cell_deg * static_cast<double>(c.rows) <= 90.0,
          "grid leaves the latitude range");
  require(c.origin_lon >= -180.0 && c.origin_lon + c.cell_deg * static_cast<double>(c.cols) <= 180.0,
          "grid leaves the longitude range");
  require(c.population_min >= 1.0, "population_min must be at least 1");
  require(c.population_alpha > 0.0, "population_alpha must be positive");
  require(std::isfinite(c.a) && std::isfinite(c.b), "gravity exponents must be finite");
  require(c.lambda_km > 0.0, "lambda_km must be positive");
  require(is_probability(c.self_loop_prob), "self_loop_prob must lie in [0, 1]");
  require(is_probability(c.persistence), "persistence must lie in [0, 1]");
  require(c.windows >= 1, "windows must be at least 1");
  require(c.periods_per_window >= 1, "periods_per_window must be at least 1");
  require(c.attractors <= c.n_regions(), "more attractors than regions");
  require(c.attractor_boost > 0.0, "attractor_boost must be positive");
  require(c.attractor_lambda_scale > 0.0, "attractor_lambda_scale must be positive");
  require(is_probability(c.coverage_base), "coverage_base must lie in [0, 1]");
  for (const auto& dip : c.coverage_dips) {
    require(dip.region < c.n_regions(), "coverage dip names a region outside the grid");
    require(dip.window >= 0 && dip.window < c.windows, "coverage dip names a window outside the range");
    require(is_probability(dip.coverage), "coverage dip value must lie in [0, 1]");
  }
}

std::string region_id(std::size_t i) {
  std::ostringstream os;
  os << 'R' << std::setw(4) << std::setfill('0') << i;
  return os.str();
}

double pair_weight(const GeneratorConfig& c, const SyntheticData& data, std::size_t u, std::size_t v) {
  const auto& pu = data.attributes.at(data.region_ids[u]).population;
  const auto& pv = data.attributes.at(data.region_ids[v]).population;
  const bool attractor = std::binary_search(data.attractors.begin(), data.attractors.end(), data.region_ids[v]);
  const double lambda = attractor ? c.lambda_km * c.attractor_lambda_scale : c.lambda_km;
  const double d = haversine_km(data.centroids[u], data.centroids[v]);
  double w = std::pow(static_cast<double>(pu), c.a) * std::pow(static_cast<double>(pv), c.b) * std::exp(-d / lambda);
  if (attractor) w *= c.attractor_boost;
  return w;
}

double expected_discordant_distance(const GeneratorConfig& c, const SyntheticData& data) {
  double num = 0.0;
  double den = 0.0;
  const std::size_t n = data.region_ids.size();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      const double w = pair_weight(c, data, u, v);
      num += w * haversine_km(data.centroids[u], data.centroids[v]);
      den += w;
    }
  }
  if (den <= 0.0) throw Error(ErrorKind::InvalidConfig, "all discordant weights vanish");
  return num / den;
}

SyntheticData generate(const GeneratorConfig& c) {
  check_config(c);
  std::mt19937_64 rng(*c.seed);
  SyntheticData data;
  const std::size_t n = c.n_regions();

  for (std::size_t i = 0; i < n; ++i) {
    const double lat0 = c.origin_lat + c.cell_deg * static_cast<double>(i / c.cols);
    const double lon0 = c.origin_lon + c.cell_deg * static_cast<double>(i % c.cols);
    const double lat1 = lat0 + c.cell_deg;
    const double lon1 = lon0 + c.cell_deg;
    const auto id = region_id(i);
    data.region_ids.push_back(id);
    data.centroids.push_back({(lat0 + lat1) / 2.0, (lon0 + lon1) / 2.0});
    data.boundaries[id] =
        normalize_boundary({id, {{{lat0, lon0}, {lat0, lon1}, {lat1, lon1}, {lat1, lon0}}}});

    RegionAttributes attrs;
    attrs.region_id = id;
    const double u = 1.0 - unit(rng);  // (0, 1]
    attrs.population = static_cast<std::uint64_t>(std::llround(c.population_min * std::pow(u, -1.0 / c.population_alpha)));
    attrs.urbanicity = kAllUrbanicity[static_cast<std::size_t>(rng() % kAllUrbanicity.size())];
    const double white = 0.4 + 0.5 * unit(rng);
    const double black = (1.0 - white) * unit(rng);
    attrs.demographics = {{"white", white}, {"black", black}, {"other", 1.0 - white - black}};
    attrs.employed = 0.4 + 0.3 * unit(rng);
    attrs.poverty = 0.05 + 0.25 * unit(rng);
    data.attributes[id] = std::move(attrs);

    for (int w = 0; w < c.windows; ++w) data.coverage[id][w] = c.coverage_base;
  }
  for (const auto& dip : c.coverage_dips) data.coverage[data.region_ids[dip.region]][dip.window] = dip.coverage;

  // Attractors: a seeded partial shuffle of the grid.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = 0; i < c.attractors; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
    std::swap(order[i], order[j]);
    data.attractors.push_back(data.region_ids[order[i]]);
  }
  std::sort(data.attractors.begin(), data.attractors.end());

  std::vector<double> origin_cum(n);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<double> pair_cum;
  double acc = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    acc += std::pow(static_cast<double>(data.attributes[data.region_ids[u]].population), c.a);
    origin_cum[u] = acc;
  }
  acc = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      acc += pair_weight(c, data, u, v);
      pairs.emplace_back(u, v);
      pair_cum.push_back(acc);
    }
  }

  std::map<std::tuple<std::size_t, std::size_t, int>, std::uint64_t> counts;
  std::vector<std::pair<std::size_t, std::size_t>> previous_active;
  for (int w = 0; w < c.windows; ++w) {
    std::set<std::pair<std::size_t, std::size_t>> active;
    for (std::size_t e = 0; e < c.events_per_window; ++e) {
      std::pair<std::size_t, std::size_t> od;
      if (pairs.empty() || unit(rng) < c.self_loop_prob) {
        const auto u = draw_index(rng, origin_cum);
        od = {u, u};
      } else if (!previous_active.empty() && unit(rng) < c.persistence) {
        od = previous_active[static_cast<std::size_t>(rng() % previous_active.size())];
      } else {
        od = pairs[draw_index(rng, pair_cum)];
      }
      if (od.first != od.second) active.insert(od);
      const int period = w * c.periods_per_window + static_cast<int>(rng() % static_cast<std::uint64_t>(c.periods_per_window));
      ++counts[{od.first, od.second, period}];
    }
    previous_active.assign(active.begin(), active.end());
  }

  for (const auto& [key, count] : counts) {
    const auto& [u, v, period] = key;
    data.events.push_back({data.region_ids[u], data.region_ids[v], period, count});
  }
  return data;
}

void write_dataset(const SyntheticData& data, const std::string& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + (std::filesystem::path(dir) / name).string());
    return out;
  };
  {
    auto out = open("events.csv");
    write_events(out, data.events);
  }
  {
    auto out = open("boundaries.csv");
    write_boundaries(out, data.boundaries);
  }
  {
    auto out = open("attributes.csv");
    write_attributes(out, data.attributes);
  }
  {
    auto out = open("coverage.csv");
    write_coverage(out, data.coverage);
  }
}

}  // namespace journeynet::synth
