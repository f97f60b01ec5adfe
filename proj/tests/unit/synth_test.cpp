#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "journeynet/analysis.hpp"
#include "journeynet/distributions.hpp"
#include "journeynet/error.hpp"
#include "journeynet/synth.hpp"

using namespace journeynet;

namespace {

synth::GeneratorConfig base() {
  synth::GeneratorConfig c;
  c.rows = 4;
  c.cols = 5;
  c.events_per_window = 500;
  c.seed = 77;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST(Synth, RequiresSeed) {
  auto c = base();
  c.seed.reset();
  try {
    synth::generate(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig);
  }
}

TEST(Synth, RejectsBadParameters) {
  auto c = base();
  c.lambda_km = 0;
  EXPECT_THROW(synth::generate(c), Error);
  c = base();
  c.self_loop_prob = 1.5;
  EXPECT_THROW(synth::generate(c), Error);
  c = base();
  c.coverage_dips = {{99, 0, 0.1}};
  EXPECT_THROW(synth::generate(c), Error);
}

TEST(Synth, ShapesAndTotals) {
  auto c = base();
  c.windows = 3;
  c.periods_per_window = 2;
  const auto d = synth::generate(c);
  EXPECT_EQ(d.boundaries.size(), 20u);
  EXPECT_EQ(d.attributes.size(), 20u);
  EXPECT_EQ(d.coverage.size(), 20u);
  std::uint64_t total = 0;
  for (const auto& e : d.events) {
    total += e.count;
    EXPECT_GE(e.period, 0);
    EXPECT_LT(e.period, 6);
  }
  EXPECT_EQ(total, 1500u);
  EXPECT_TRUE(std::is_sorted(d.events.begin(), d.events.end(), [](const auto& a, const auto& b) {
    return std::tie(a.origin, a.destination, a.period) < std::tie(b.origin, b.destination, b.period);
  }));
}

TEST(Synth, AllSelfLoops) {
  auto c = base();
  c.self_loop_prob = 1.0;
  const auto d = synth::generate(c);
  for (const auto& e : d.events) EXPECT_EQ(e.origin, e.destination);
  EXPECT_DOUBLE_EQ(summary_stats(build_network(d.events)).self_loop_share, 1.0);
}

TEST(Synth, UniformLimitOfDestinations) {
  auto c = base();
  c.a = 0;
  c.b = 0;
  c.lambda_km = 1e12;
  c.self_loop_prob = 0.0;
  c.events_per_window = 100000;
  const auto d = synth::generate(c);
  std::map<std::string, double> dest;
  for (const auto& e : d.events) dest[e.destination] += static_cast<double>(e.count);
  ASSERT_EQ(dest.size(), 20u);
  const double expected = 100000.0 * c.windows / 20.0;
  double chi2 = 0.0;
  for (const auto& [id, n] : dest) chi2 += (n - expected) * (n - expected) / expected;
  EXPECT_GT(dist::chi2_sf(chi2, 19), 0.01);
}

TEST(Synth, FittedMeanNearAnalyticMean) {
  auto c = base();
  c.rows = 6;
  c.cols = 6;
  c.cell_deg = 0.25;
  c.lambda_km = 100.0;
  c.self_loop_prob = 0.2;
  c.events_per_window = 5000;
  const auto d = synth::generate(c);
  const auto net = build_network(d.events);
  const auto pairs = discordant_pairs(net);
  const auto intervals = interval_table(d.boundaries, pairs);
  const auto fit = turnbull_fit(discordant_sample(net, intervals));
  const double analytic = synth::expected_discordant_distance(c, d);
  EXPECT_NEAR(summarize(fit).mean, analytic, 0.2 * analytic);
}

TEST(Synth, ExpectedDistanceIncreasesWithLambda) {
  auto c = base();
  double prev = 0.0;
  for (double lambda : {20.0, 80.0, 400.0}) {
    c.lambda_km = lambda;
    const auto d = synth::generate(c);
    const double m = synth::expected_discordant_distance(c, d);
    EXPECT_GT(m, prev);
    prev = m;
  }
}

TEST(Synth, AttractorsDrawLongerJourneys) {
  auto c = base();
  c.attractors = 2;
  c.attractor_boost = 5;
  c.attractor_lambda_scale = 3;
  const auto d = synth::generate(c);
  ASSERT_EQ(d.attractors.size(), 2u);
  std::uint64_t into = 0;
  for (const auto& e : d.events) {
    if (e.origin != e.destination && std::binary_search(d.attractors.begin(), d.attractors.end(), e.destination)) {
      into += e.count;
    }
  }
  EXPECT_GT(into, 0u);
}

TEST(Synth, SameSeedByteIdenticalFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "journeynet_synth_test";
  std::filesystem::remove_all(dir);
  auto c = base();
  c.coverage_dips = {{3, 0, 0.4}};
  synth::write_dataset(synth::generate(c), (dir / "a").string());
  synth::write_dataset(synth::generate(c), (dir / "b").string());
  for (const char* f : {"events.csv", "boundaries.csv", "attributes.csv", "coverage.csv"}) {
    const auto a = slurp(dir / "a" / f);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(dir / "b" / f)) << f;
  }
  c.seed = 78;
  synth::write_dataset(synth::generate(c), (dir / "c").string());
  EXPECT_NE(slurp(dir / "a" / "events.csv"), slurp(dir / "c" / "events.csv"));
  std::filesystem::remove_all(dir);
}

TEST(Synth, CoverageDipsApplied) {
  auto c = base();
  c.windows = 2;
  c.coverage_dips = {{4, 1, 0.3}};
  const auto d = synth::generate(c);
  EXPECT_DOUBLE_EQ(d.coverage.at(synth::region_id(4)).at(1), 0.3);
  EXPECT_DOUBLE_EQ(d.coverage.at(synth::region_id(4)).at(0), c.coverage_base);
}
