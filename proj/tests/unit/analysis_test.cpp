#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "journeynet/analysis.hpp"
#include "journeynet/error.hpp"
#include "journeynet/synth.hpp"
#include "oracles.hpp"

using namespace journeynet;

namespace {

RegionAttributes attr(const std::string& id, std::uint64_t pop, Urbanicity u = Urbanicity::MediumMetro) {
  RegionAttributes a;
  a.region_id = id;
  a.population = pop;
  a.urbanicity = u;
  a.demographics = {{"white", 0.6}, {"black", 0.3}, {"other", 0.1}};
  a.employed = 0.55;
  a.poverty = 0.12;
  return a;
}

std::size_t curvature_argmax(const std::vector<double>& y) {
  const std::size_t n = y.size();
  const double lo = *std::min_element(y.begin(), y.end());
  const double hi = *std::max_element(y.begin(), y.end());
  const double h = 1.0 / static_cast<double>(n - 1);
  std::size_t best = 1;
  double best_k = -1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double y0 = (y[i - 1] - lo) / (hi - lo), y1 = (y[i] - lo) / (hi - lo), y2 = (y[i + 1] - lo) / (hi - lo);
    const double d1 = (y2 - y0) / (2 * h);
    const double d2 = (y2 - 2 * y1 + y0) / (h * h);
    const double k = std::abs(d2) / std::pow(1 + d1 * d1, 1.5);
    if (k > best_k) {
      best_k = k;
      best = i;
    }
  }
  return best;
}

}  // namespace

TEST(LoglogFit, IdentityPowerLaw) {
  std::vector<double> x, y;
  for (int i = 10; i <= 10000; i += 10) {
    x.push_back(i);
    y.push_back(i);
  }
  const auto f = loglog_fit(x, y);
  // y enters as log(y + 1), which pulls the slope just under one.
  Eigen::MatrixXd design(x.size(), 2);
  Eigen::VectorXd rhs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = std::log(x[i]);
    rhs(i) = std::log1p(y[i]);
  }
  const Eigen::VectorXd beta = design.colPivHouseholderQr().solve(rhs);
  EXPECT_NEAR(f.slope, beta(1), 1e-10);
  EXPECT_NEAR(f.intercept, beta(0), 1e-10);
  EXPECT_LT(f.slope, 1.0);
  EXPECT_GT(f.r_squared, 0.99);
}

TEST(LoglogFit, ConstantY) {
  const std::vector<double> x{1, 2, 3, 4, 5}, y(5, 7.0);
  const auto f = loglog_fit(x, y);
  EXPECT_NEAR(f.slope, 0.0, 1e-12);
  EXPECT_NEAR(f.r_squared, 0.0, 1e-12);
}

TEST(LoglogFit, FlagsPlantedOutlier) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> noise(0.0, 0.1);
  std::vector<double> x, y;
  for (int i = 1; i <= 100; ++i) {
    x.push_back(i * 3.0);
    y.push_back(std::exp(1.5 * std::log(i * 3.0) + noise(rng)));
  }
  y[37] *= std::exp(1.0);  // ten noise standard deviations
  const auto f = loglog_fit(x, y);
  for (std::size_t i = 0; i < f.outlier.size(); ++i) EXPECT_EQ(f.outlier[i], i == 37) << i;
}

TEST(LoglogFit, Preconditions) {
  const std::vector<double> two{1, 2};
  EXPECT_THROW(loglog_fit(two, two), Error);
  const std::vector<double> x{0, 1, 2}, y{1, 1, 1};
  EXPECT_THROW(loglog_fit(x, y), Error);
  EXPECT_NO_THROW(loglog_fit(x, y, true));
}

TEST(PerCapita, Arithmetic) {
  const std::vector<JourneyEvent> ev{{"A", "B", 0, 100}};
  const AttributeMap attrs{{"A", attr("A", 50)}, {"B", attr("B", 100000)}};
  const auto pc = per_capita_metrics(build_network(ev), attrs);
  EXPECT_DOUBLE_EQ(pc.ipc[1], 1e-3);
  EXPECT_DOUBLE_EQ(pc.opc[0], 2.0);
}

TEST(PerCapita, LinearInWeightsAndSkipsZeroPopulation) {
  std::mt19937_64 rng(6);
  auto ev = oracle::random_events(rng, 6, 0.5);
  AttributeMap attrs;
  for (std::size_t i = 0; i < 6; ++i) attrs[oracle::node_name(i)] = attr(oracle::node_name(i), 1000 * (i + 1));
  attrs[oracle::node_name(2)].population = 0;
  const auto base = per_capita_metrics(build_network(ev), attrs);
  for (auto& e : ev) e.count *= 2;
  const auto twice = per_capita_metrics(build_network(ev), attrs);
  ASSERT_EQ(base.regions, twice.regions);
  for (std::size_t i = 0; i < base.ipc.size(); ++i) EXPECT_DOUBLE_EQ(twice.ipc[i], 2 * base.ipc[i]);
  EXPECT_EQ(base.skipped, std::vector<std::string>{oracle::node_name(2)});
  EXPECT_EQ(std::count(base.regions.begin(), base.regions.end(), oracle::node_name(2)), 0);
}

TEST(PerCapita, MatchesDivisionOracle) {
  std::mt19937_64 rng(16);
  const auto ev = oracle::random_events(rng, 8, 0.4);
  AttributeMap attrs;
  for (std::size_t i = 0; i < 8; ++i) attrs[oracle::node_name(i)] = attr(oracle::node_name(i), 500 + 37 * i * i);
  const auto net = build_network(ev);
  const auto pc = per_capita_metrics(net, attrs);
  for (std::size_t r = 0; r < pc.regions.size(); ++r) {
    double in = 0;
    for (const auto& e : ev) {
      if (e.destination == pc.regions[r] && e.origin != e.destination) in += static_cast<double>(e.count);
    }
    EXPECT_DOUBLE_EQ(pc.ipc[r], in / static_cast<double>(attrs.at(pc.regions[r]).population));
  }
}

TEST(PerCapita, MissingAttributesThrows) {
  const std::vector<JourneyEvent> ev{{"A", "B", 0, 1}};
  const AttributeMap attrs{{"A", attr("A", 5)}};
  try {
    per_capita_metrics(build_network(ev), attrs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingAttributes);
  }
}

TEST(Kneedle, PerfectStep) {
  const std::vector<double> y{1, 1, 1, 0, 0, 0};
  EXPECT_EQ(kneedle_elbow(y), std::optional<std::size_t>(3));
}

TEST(Kneedle, LinearRampHasNoKnee) {
  std::vector<double> y(20);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = 20.0 - static_cast<double>(i);
  EXPECT_FALSE(kneedle_elbow(y).has_value());
  const std::vector<double> flat(10, 2.0);
  EXPECT_FALSE(kneedle_elbow(flat).has_value());
}

TEST(Kneedle, InverseDecayNearCurvatureMaximum) {
  std::vector<double> y;
  for (int i = 1; i <= 50; ++i) y.push_back(1.0 / i);
  const auto knee = kneedle_elbow(y);
  ASSERT_TRUE(knee.has_value());
  const auto ref = curvature_argmax(y);
  EXPECT_LE(std::max(*knee, ref) - std::min(*knee, ref), 1u);
}

TEST(TopK, AllRegionsAndTiebreak) {
  const std::vector<std::string> ids{"d", "c", "b", "a"};
  const std::vector<double> v{3, 5, 5, 1};
  EXPECT_EQ(top_k(Metric::IPC, ids, v, 4).members, (std::vector<std::string>{"b", "c", "d", "a"}));
  EXPECT_EQ(top_k(Metric::IPC, ids, v, 1).members, std::vector<std::string>{"b"});
  EXPECT_THROW(top_k(Metric::IPC, ids, v, 5), Error);
}

TEST(TopK, MatchesFullSort) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<std::string> ids;
  std::vector<double> v;
  for (std::size_t i = 0; i < 40; ++i) {
    ids.push_back(oracle::node_name(i));
    v.push_back(u(rng));
  }
  std::vector<std::size_t> order(40);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] > v[b]; });
  const auto sel = top_k(Metric::Hub, ids, v, 10);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(sel.members[i], ids[order[i]]);
}

TEST(Profile, IdenticalGroupsNotDifferent) {
  AttributeMap attrs;
  std::vector<std::string> universe;
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::uint64_t> pop(1000, 90000);
  for (std::size_t i = 0; i < 12; ++i) {
    const auto id = oracle::node_name(i);
    attrs[id] = attr(id, pop(rng), kAllUrbanicity[i % 6]);
    universe.push_back(id);
  }
  TopKSelection a{Metric::IPC, 6, {universe.begin(), universe.begin() + 6}, {}, std::nullopt};
  TopKSelection b = a;
  b.metric = Metric::OPC;
  const std::vector<TopKSelection> sels{a, b};
  const auto r = profile_groups(sels, attrs, universe);
  ASSERT_EQ(r.groups.size(), 3u);
  EXPECT_EQ(r.groups[2].name, "other");
  for (const auto& t : r.socioeconomic_tests) {
    if (t.label == "top_ipc vs top_opc") EXPECT_NEAR(t.p_value, 1.0, 1e-9);
  }
  for (const auto& t : r.urbanicity_tests) {
    if (t.label == "top_ipc vs top_opc") EXPECT_NEAR(t.p_value, 1.0, 1e-9);
  }
  EXPECT_EQ(r.population_tests[0].label, "top_ipc vs top_opc");
  EXPECT_GT(r.population_tests[0].p_value, 0.05);
  EXPECT_EQ(r.socioeconomic_tests.size(), 9u);
  EXPECT_EQ(*r.socioeconomic_tests[0].n_comparisons, 9u);
  EXPECT_EQ(*r.urbanicity_tests[0].n_comparisons, 6u);
}

TEST(Profile, UrbanTopGroupDetected) {
  AttributeMap attrs;
  std::vector<std::string> universe;
  for (std::size_t i = 0; i < 240; ++i) {
    const auto id = "r" + std::to_string(1000 + i);
    const Urbanicity u = i < 40 ? kAllUrbanicity[i % 4] : (i % 5 == 0 ? Urbanicity::SmallMetro : Urbanicity::Noncore);
    attrs[id] = attr(id, 10000 + i, u);
    universe.push_back(id);
  }
  TopKSelection top{Metric::Authority, 40, {universe.begin(), universe.begin() + 40}, {}, std::nullopt};
  const std::vector<TopKSelection> sels{top};
  const auto r = profile_groups(sels, attrs, universe);
  ASSERT_EQ(r.urbanicity_tests.size(), 2u);
  EXPECT_LT(*r.urbanicity_tests[0].corrected_p, 0.001);
  EXPECT_DOUBLE_EQ(r.groups[0].urban_share, 1.0);
}

TEST(Profile, LargePopulationGapSignificant) {
  AttributeMap attrs;
  std::vector<std::string> universe;
  for (std::size_t i = 0; i < 60; ++i) {
    const auto id = "r" + std::to_string(100 + i);
    const std::uint64_t pop = i < 10 ? 1384559 + 150000 * (i % 5) - 300000 : 70262 + 9000 * (i % 7) - 27000;
    attrs[id] = attr(id, pop);
    universe.push_back(id);
  }
  TopKSelection top{Metric::IPC, 10, {universe.begin(), universe.begin() + 10}, {}, std::nullopt};
  const std::vector<TopKSelection> sels{top};
  const auto r = profile_groups(sels, attrs, universe);
  ASSERT_EQ(r.population_tests.size(), 1u);
  EXPECT_LT(r.population_tests[0].p_value, 0.001);
  EXPECT_GT(r.groups[0].mean_population, r.groups[1].mean_population);
}

TEST(Profile, SingletonGroupLeftOutOfTukey) {
  AttributeMap attrs;
  std::vector<std::string> universe;
  for (std::size_t i = 0; i < 5; ++i) {
    const auto id = oracle::node_name(i);
    attrs[id] = attr(id, 100 * (i + 1));
    universe.push_back(id);
  }
  TopKSelection top{Metric::IPC, 4, {universe.begin(), universe.begin() + 4}, {}, std::nullopt};
  const std::vector<TopKSelection> sels{top};
  const auto r = profile_groups(sels, attrs, universe);
  EXPECT_TRUE(r.population_tests.empty());
  EXPECT_EQ(r.notes.size(), 1u);
}

namespace {

synth::SyntheticData grid_data(std::uint64_t seed) {
  synth::GeneratorConfig cfg;
  cfg.rows = 4;
  cfg.cols = 4;
  cfg.windows = 3;
  cfg.periods_per_window = 1;
  cfg.events_per_window = 600;
  cfg.self_loop_prob = 0.3;
  cfg.persistence = 0.4;
  cfg.coverage_dips = {{1, 0, 0.7}, {6, 2, 0.6}, {11, 1, 0.5}};
  cfg.seed = seed;
  return synth::generate(cfg);
}

IntervalTable intervals_for(const JourneyNetwork& net, const BoundaryMap& b) {
  const auto pairs = discordant_pairs(net);
  return interval_table(b, pairs);
}

}  // namespace

TEST(DistanceByGroup, AllMemberGroupEqualsAll) {
  const auto data = grid_data(1);
  const auto net = build_network(data.events);
  TopKSelection everyone{Metric::IPC, net.node_count(), net.nodes(), {}, std::nullopt};
  const std::vector<TopKSelection> sels{everyone};
  DistanceOptions opts;
  opts.mc.reps = 5;
  opts.mc.n_per_rep = 100;
  const auto r = journey_distance_by_group(net, sels, intervals_for(net, data.boundaries), opts);
  ASSERT_EQ(r.groups.size(), 2u);
  EXPECT_EQ(r.groups[0].name, "all");
  EXPECT_EQ(r.groups[0].dist.lower, r.groups[1].dist.lower);
  EXPECT_EQ(r.groups[0].dist.mass, r.groups[1].dist.mass);
  EXPECT_EQ(r.u_tests.size(), 1u);
  EXPECT_EQ(*r.u_tests[0].n_comparisons, 1u);
}

TEST(DistanceByGroup, ImportAndExportSamples) {
  const std::vector<JourneyEvent> ev{{"A", "B", 0, 2}, {"B", "C", 0, 1}, {"C", "B", 0, 4}, {"B", "B", 0, 9}};
  const auto net = build_network(ev);
  IntervalTable t{{{"A", "B"}, {1, 2}}, {{"B", "C"}, {5, 6}}};
  TopKSelection in{Metric::Authority, 1, {"B"}, {}, std::nullopt};
  TopKSelection out{Metric::Hub, 1, {"B"}, {}, std::nullopt};
  EXPECT_EQ(group_sample(net, in, t).size(), 2u);
  ASSERT_EQ(group_sample(net, out, t).size(), 1u);
  EXPECT_EQ(group_sample(net, out, t)[0].interval.lower_km, 5.0);
}

TEST(Sweep, ZeroBetaKeepsEverythingAndFiltersNest) {
  const auto data = grid_data(5);
  SweepOptions opts;
  opts.betas = {0.0, 0.55, 0.75, 0.85};
  opts.k = 3;
  opts.distance.mc.reps = 5;
  opts.distance.mc.n_per_rep = 50;
  const auto r = sensitivity_sweep(data.events, data.attributes, data.coverage, data.boundaries, opts);
  ASSERT_EQ(r.entries.size(), 4u);
  EXPECT_TRUE(r.entries[0].removed.empty());
  EXPECT_EQ(r.entries[0].nodes, build_network(data.events).node_count());
  EXPECT_TRUE(r.subgraph_property);
  EXPECT_EQ(r.entries[2].removed, (std::vector<std::string>{"R0001", "R0006", "R0011"}));
  EXPECT_EQ(r.entries[1].removed, (std::vector<std::string>{"R0011"}));
  for (const auto& e : r.entries) EXPECT_EQ(e.persistence.size(), 5u);
}

TEST(Sweep, EverythingFilteredThrows) {
  const auto data = grid_data(5);
  SweepOptions opts;
  opts.betas = {0.99};
  try {
    sensitivity_sweep(data.events, data.attributes, data.coverage, data.boundaries, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyAfterFilter);
  }
}

TEST(DegreeFits, UsesPositivePopulationOnly) {
  const auto data = grid_data(3);
  auto attrs = data.attributes;
  attrs["R0000"].population = 0;
  const auto f = degree_fits(build_network(data.events), attrs);
  EXPECT_EQ(std::count(f.regions.begin(), f.regions.end(), "R0000"), 0);
  EXPECT_EQ(f.out_vs_in.residuals.size(), f.regions.size());
}
