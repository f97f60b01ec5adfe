#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "journeynet/geo.hpp"
#include "journeynet/network.hpp"
#include "journeynet/region.hpp"
#include "journeynet/stats.hpp"
#include "journeynet/survival.hpp"
#include "journeynet/temporal.hpp"

namespace journeynet {

// ---------------------------------------------------------------------------
// Log-log regression

struct RegressionFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double residual_std = 0.0;  ///< population standard deviation of residuals
  std::vector<double> residuals;
  std::vector<bool> outlier;  ///< |residual| > 3 * residual_std
};

/// Ordinary least squares of log(y + 1) on log(x), or on log(x + 1) when
/// `shift_x` is set (degree-vs-degree plots). Throws Error{TooFewPoints}
/// below three points and Error{InvalidArgument} for x <= 0 without shift or
/// negative y.
RegressionFit loglog_fit(std::span<const double> x, std::span<const double> y, bool shift_x = false);

// ---------------------------------------------------------------------------
// Per-capita degrees and top-k selection

struct PerCapita {
  std::vector<std::string> regions;  ///< scored regions, network order
  std::vector<double> ipc;           ///< weighted in-degree / population
  std::vector<double> opc;           ///< weighted out-degree / population
  std::vector<std::string> skipped;  ///< zero or unknown population
};

/// Per-capita weighted degrees. Regions with zero population are skipped and
/// listed; a region without attributes throws Error{MissingAttributes}.
PerCapita per_capita_metrics(const JourneyNetwork& net, const AttributeMap& attrs, bool include_self_loops = false);

/// Offline Kneedle on a descending curve (treated as convex decreasing):
/// both axes scaled to the unit square, difference curve
/// D = (1 - y) - x, first local maximum whose value the curve later drops
/// below (threshold lowered by S times the mean x step).
/// Returns the 0-based index of the knee, or nullopt when there is none
/// (flat or linear input). Throws Error{TooFewPoints} below three values.
std::optional<std::size_t> kneedle_elbow(std::span<const double> sorted_desc, double sensitivity = 0.0);

enum class Metric { IPC, OPC, Authority, Hub };

std::string_view to_string(Metric m) noexcept;
/// IPC and authority describe journeys into a region; OPC and hub journeys out of it.
constexpr bool is_import_metric(Metric m) noexcept { return m == Metric::IPC || m == Metric::Authority; }

struct TopKSelection {
  Metric metric = Metric::IPC;
  std::size_t k = 0;
  std::vector<std::string> members;  ///< descending value, ties by ascending id
  std::vector<double> values;
  /// 1-based rank of the Kneedle knee on the full sorted curve.
  std::optional<std::size_t> elbow_k;
};

/// Top `k` regions by value. Throws Error{KTooLarge} if k exceeds the
/// number of scored regions.
TopKSelection top_k(Metric metric, std::span<const std::string> ids, std::span<const double> values,
                    std::size_t k = 10);

/// IPC, OPC, authority and hub selections on the loop-free network. `k` is
/// capped at the number of scorable regions.
std::vector<TopKSelection> standard_selections(const JourneyNetwork& net, const AttributeMap& attrs,
                                               std::size_t k = 10);

// ---------------------------------------------------------------------------
// Group profiles

enum class CountBasis {
  /// Each member county contributes its share (county-equivalents).
  Counties,
  /// Each member contributes share * population (people).
  People,
};

struct ProfileOptions {
  double alpha = 0.05;
  CountBasis basis = CountBasis::Counties;
  /// Holm family size overrides; 0 means "number of tests in the family".
  std::size_t socioeconomic_family = 0;
  std::size_t urbanicity_family = 0;
};

struct GroupProfile {
  std::string name;
  std::vector<std::string> members;
  double mean_population = 0.0;
  double urban_share = 0.0;
  double rural_share = 0.0;
  std::array<double, 6> urbanicity_share{};  ///< indexed by class code - 1
  std::map<std::string, double> demographic_means;
  double employed_mean = 0.0;
  double poverty_mean = 0.0;
};

struct ProfileReport {
  std::vector<GroupProfile> groups;
  std::vector<TestResult> population_tests;     ///< Tukey HSD, self-correcting
  std::vector<TestResult> socioeconomic_tests;  ///< G-tests: race, employed, poverty; Holm family
  std::vector<TestResult> urbanicity_tests;     ///< G-tests: collapsed and six-class; Holm family
  std::vector<std::string> notes;
};

/// Profiles each selection plus an "other" group (universe members in no
/// selection) and runs the pairwise test battery.
ProfileReport profile_groups(std::span<const TopKSelection> selections, const AttributeMap& attrs,
                             std::span<const std::string> universe, const ProfileOptions& opts = {});

// ---------------------------------------------------------------------------
// Journey distances by group

struct DistanceOptions {
  McUOptions mc;
  double alpha = 0.05;
  TurnbullOptions fit;
  std::size_t family_size = 0;  ///< 0: number of pairs
};

struct GroupDistance {
  std::string name;
  std::size_t journeys = 0;  ///< distinct discordant edges
  EstimatedDistribution dist;
  DistributionSummary summary;
};

struct DistanceReport {
  std::vector<GroupDistance> groups;  ///< "all" first, then selections in order
  std::vector<TestResult> u_tests;    ///< every pair, Holm-corrected
  std::vector<TestResult> z_tests;
};

/// The censored sample for journeys into (import metrics) or out of (export
/// metrics) the selection's members. Self-loops never enter.
CensoredSample group_sample(const JourneyNetwork& net, const TopKSelection& selection, const IntervalTable& intervals);

DistanceReport journey_distance_by_group(const JourneyNetwork& net, std::span<const TopKSelection> selections,
                                         const IntervalTable& intervals, const DistanceOptions& opts);

/// Every ordered discordant pair of the network, for interval_table().
std::vector<RegionPair> discordant_pairs(const JourneyNetwork& net);

// ---------------------------------------------------------------------------
// Degree fits and coverage sensitivity

struct DegreeFits {
  RegressionFit out_vs_in;   ///< x = weighted in + 1, y = weighted out
  RegressionFit out_vs_pop;  ///< x = population
  RegressionFit in_vs_pop;
  std::vector<std::string> regions;  ///< points used, in network order
};

/// Degree/population fits on the loop-free network; regions without positive
/// population are left out.
DegreeFits degree_fits(const JourneyNetwork& net, const AttributeMap& attrs);

struct SweepOptions {
  std::vector<double> betas{0.55, 0.65, 0.75, 0.85};
  int window_length = 1;
  std::size_t k = 10;
  DistanceOptions distance;
  BoundsOptions bounds;
};

struct GroupPersistence {
  std::string name;
  double undirected = 0.0;
  double in = 0.0;
  double out = 0.0;
};

struct SweepEntry {
  double beta = 0.0;
  std::vector<std::string> retained;
  std::vector<std::string> removed;  ///< candidates dropped by the coverage filter
  std::size_t nodes = 0;
  std::size_t edges = 0;
  DegreeFits fits;
  DistanceReport distances;
  std::vector<GroupPersistence> persistence;  ///< "all" then each selection
  std::vector<TopKSelection> selections;
};

struct SweepReport {
  std::vector<SweepEntry> entries;  ///< in the order of opts.betas
  bool subgraph_property = true;
  std::vector<std::string> violations;
};

/// Re-runs the degree, distance and persistence analyses for each coverage
/// threshold and checks that higher thresholds yield subgraphs of lower ones.
/// Throws Error{EmptyAfterFilter} when a threshold leaves no discordant edge.
SweepReport sensitivity_sweep(std::span<const JourneyEvent> events, const AttributeMap& attrs,
                              const CoverageTable& coverage, const BoundaryMap& boundaries,
                              const SweepOptions& opts);

}  // namespace journeynet
