#include <gtest/gtest.h>

#include <random>

#include "journeynet/error.hpp"
#include "journeynet/stats.hpp"
#include "journeynet/synth.hpp"
#include "journeynet/temporal.hpp"
#include "oracles.hpp"

using namespace journeynet;

namespace {

std::vector<JourneyEvent> spread(std::mt19937_64& rng, std::size_t nodes, int periods) {
  std::vector<JourneyEvent> all;
  for (int p = 0; p < periods; ++p) {
    auto ev = oracle::random_events(rng, nodes, 0.4, p);
    all.insert(all.end(), ev.begin(), ev.end());
  }
  return all;
}

RegionBoundary square(const std::string& id, double lat0, double lon0) {
  return normalize_boundary({id, {{{lat0, lon0}, {lat0, lon0 + 1}, {lat0 + 1, lon0 + 1}, {lat0 + 1, lon0}}}});
}

}  // namespace

TEST(SliceSeries, SingleWindow) {
  std::vector<JourneyEvent> ev{{"A", "B", 0, 1}, {"B", "C", 1, 1}};
  EXPECT_EQ(slice_series(ev, 2, false).size(), 1u);
}

TEST(SliceSeries, PerWindowWeightsMatchFilteredBuild) {
  std::mt19937_64 rng(3);
  const auto ev = spread(rng, 5, 3);
  const auto s = slice_series(ev, 1, true);
  ASSERT_EQ(s.size(), 3u);
  for (int p = 0; p < 3; ++p) {
    BuildOptions opts;
    opts.period = p;
    const auto ref = build_network(ev, opts);
    const auto& w = s.windows[static_cast<std::size_t>(p)];
    EXPECT_EQ(w.total_weight(), ref.total_weight());
    for (const auto& e : ref.edges()) {
      EXPECT_EQ(w.weight(ref.nodes()[e.source], ref.nodes()[e.target]), e.weight);
    }
  }
}

TEST(SliceSeries, DoublingWindowHalvesCount) {
  std::mt19937_64 rng(4);
  const auto ev = spread(rng, 4, 8);
  EXPECT_EQ(slice_series(ev, 1, false).size(), 8u);
  EXPECT_EQ(slice_series(ev, 2, false).size(), 4u);
  EXPECT_EQ(slice_series(ev, 4, false).size(), 2u);
  EXPECT_EQ(slice_series(ev, 3, false).size(), 3u);
}

TEST(SliceSeries, DropsSelfLoopsUnlessAsked) {
  std::vector<JourneyEvent> ev{{"A", "A", 0, 5}, {"A", "B", 0, 1}};
  EXPECT_EQ(slice_series(ev, 1, false).windows[0].self_loop_count(), 0u);
  EXPECT_EQ(slice_series(ev, 1, true).windows[0].self_loop_count(), 1u);
}

TEST(TemporalCorrelation, IdenticalSnapshotsGiveOne) {
  std::vector<JourneyEvent> ev;
  for (int p = 0; p < 3; ++p) {
    ev.push_back({"A", "B", p, 1});
    ev.push_back({"B", "C", p, 2});
    ev.push_back({"C", "A", p, 1});
  }
  const auto s = slice_series(ev, 1, false);
  for (auto d : {TemporalDirection::Undirected, TemporalDirection::In, TemporalDirection::Out}) {
    const auto c = temporal_correlation(s, d);
    EXPECT_DOUBLE_EQ(c.overall, 1.0);
    for (double v : c.values) EXPECT_DOUBLE_EQ(v, 1.0);
  }
}

TEST(TemporalCorrelation, DisjointSnapshotsGiveZero) {
  std::vector<JourneyEvent> ev{{"A", "B", 0, 1}, {"C", "D", 0, 1}, {"A", "C", 1, 1}, {"B", "D", 1, 1}};
  const auto c = temporal_correlation(slice_series(ev, 1, false), TemporalDirection::Undirected);
  EXPECT_DOUBLE_EQ(c.overall, 0.0);
}

TEST(TemporalCorrelation, MatchesDirectLoops) {
  std::mt19937_64 rng(17);
  const auto s = slice_series(spread(rng, 5, 3), 1, false);
  for (auto d : {TemporalDirection::Undirected, TemporalDirection::In, TemporalDirection::Out}) {
    const auto c = temporal_correlation(s, d);
    const auto ref = oracle::temporal_loops(s, d);
    ASSERT_EQ(c.values.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(c.values[i], ref[i], 1e-12);
  }
}

TEST(TemporalCorrelation, SkipModeAveragesDefinedTermsOnly) {
  // A keeps its neighbour between windows 0 and 1 but is absent in window 2.
  std::vector<JourneyEvent> ev{{"A", "B", 0, 1}, {"A", "B", 1, 1}, {"C", "D", 2, 1}};
  const auto s = slice_series(ev, 1, false);
  const auto zero = temporal_correlation(s, TemporalDirection::Out);
  const auto skip = temporal_correlation(s, TemporalDirection::Out, {false, UndefinedTerm::Skip});
  EXPECT_DOUBLE_EQ(zero.values[0], 0.5);
  EXPECT_DOUBLE_EQ(skip.values[0], 1.0);
  EXPECT_TRUE(zero.defined[0]);
  EXPECT_FALSE(zero.defined[2]);
}

TEST(TemporalCorrelation, SingleWindowThrows) {
  std::vector<JourneyEvent> ev{{"A", "B", 0, 1}};
  try {
    temporal_correlation(slice_series(ev, 1, false), TemporalDirection::In);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooFewWindows);
  }
}

TEST(SeriesSummaries, LoopOnlyWindowHasUnitShareAndNoDistance) {
  std::vector<JourneyEvent> ev{{"A", "A", 0, 3}, {"A", "B", 1, 1}, {"A", "A", 1, 1}};
  BoundaryMap b{{"A", square("A", 0, 0)}, {"B", square("B", 0, 3)}};
  const std::vector<RegionPair> req{{"A", "B"}};
  const auto sums = series_summaries(slice_series(ev, 1, true), interval_table(b, req));
  ASSERT_EQ(sums.size(), 2u);
  EXPECT_DOUBLE_EQ(*sums[0].self_loop_share, 1.0);
  EXPECT_FALSE(sums[0].mean_km.has_value());
  EXPECT_DOUBLE_EQ(*sums[1].self_loop_share, 0.5);
  EXPECT_TRUE(sums[1].mean_km.has_value());
}

TEST(SeriesSummaries, IncreasingShareIsMonotone) {
  std::vector<JourneyEvent> ev{{"A", "A", 0, 1}, {"A", "B", 0, 3}, {"A", "A", 1, 3}, {"A", "B", 1, 1}};
  BoundaryMap b{{"A", square("A", 0, 0)}, {"B", square("B", 0, 3)}};
  const std::vector<RegionPair> req{{"A", "B"}};
  const auto sums = series_summaries(slice_series(ev, 1, true), interval_table(b, req));
  EXPECT_DOUBLE_EQ(*sums[0].self_loop_share, 0.25);
  EXPECT_DOUBLE_EQ(*sums[1].self_loop_share, 0.75);
}

TEST(SeriesSummaries, ConstantGeneratorShowsNoShareTrend) {
  synth::GeneratorConfig cfg;
  cfg.rows = 3;
  cfg.cols = 3;
  cfg.windows = 12;
  cfg.periods_per_window = 1;
  cfg.events_per_window = 400;
  cfg.self_loop_prob = 0.7;
  cfg.seed = 2024;
  const auto data = synth::generate(cfg);
  const auto s = slice_series(data.events, 1, true);
  const auto net = build_network(data.events);
  std::vector<RegionPair> pairs;
  for (const auto& e : net.edges()) {
    if (!e.is_self_loop()) pairs.emplace_back(net.nodes()[e.source], net.nodes()[e.target]);
  }
  std::vector<double> shares;
  for (const auto& w : series_summaries(s, interval_table(data.boundaries, pairs))) shares.push_back(*w.self_loop_share);
  EXPECT_GT(hamed_rao_trend(shares).p_value, 0.05);
}
