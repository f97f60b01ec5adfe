#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "journeynet/error.hpp"
#include "journeynet/survival.hpp"

using namespace journeynet;

namespace {

CensoredSample bracketed(std::mt19937_64& rng, std::size_t n, auto&& draw, double slack) {
  std::uniform_real_distribution<double> u(0.0, slack);
  CensoredSample s;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = draw(rng);
    s.push_back({{std::max(0.0, x - u(rng)), x + u(rng)}, 1.0});
  }
  return s;
}

}  // namespace

TEST(Turnbull, DegenerateIntervalsReduceToWeightedEcdf) {
  const std::vector<double> x{3, 1, 4, 1, 5, 9, 2, 6};
  const std::vector<double> w{1, 2, 1, 1, 3, 1, 1, 2};
  CensoredSample s;
  for (std::size_t i = 0; i < x.size(); ++i) s.push_back({{x[i], x[i]}, w[i]});
  const auto fit = turnbull_fit(s);
  const double total = 12.0;
  for (double d = 0.0; d <= 10.0; d += 0.25) {
    double ecdf = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) ecdf += x[i] <= d ? w[i] / total : 0.0;
    EXPECT_NEAR(fit.cdf(d), ecdf, 1e-12) << "d=" << d;
  }
}

TEST(Turnbull, DisjointIntervalsSplitMassEvenly) {
  const CensoredSample s{{{0, 1}, 1.0}, {{10, 11}, 1.0}};
  const auto fit = turnbull_fit(s);
  ASSERT_EQ(fit.size(), 2u);
  EXPECT_NEAR(fit.mass[0], 0.5, 1e-12);
  EXPECT_NEAR(fit.mass[1], 0.5, 1e-12);
  EXPECT_EQ(fit.lower[1], 10.0);
  EXPECT_EQ(fit.upper[1], 11.0);
}

TEST(Turnbull, OverlapsConcentrateOnInnermostInterval) {
  const CensoredSample s{{{0, 5}, 1.0}, {{3, 8}, 1.0}, {{4, 10}, 1.0}};
  const auto fit = turnbull_fit(s);
  ASSERT_EQ(fit.size(), 1u);
  EXPECT_EQ(fit.lower[0], 4.0);
  EXPECT_EQ(fit.upper[0], 5.0);
  EXPECT_NEAR(fit.mass[0], 1.0, 1e-12);
}

TEST(Turnbull, FixedPointOfEmStep) {
  std::mt19937_64 rng(1);
  std::exponential_distribution<double> e(0.02);
  const auto s = bracketed(rng, 60, e, 30.0);
  const auto fit = turnbull_fit(s);
  ASSERT_TRUE(fit.converged);
  const auto next = turnbull_em_step(s, fit);
  for (std::size_t j = 0; j < fit.size(); ++j) EXPECT_NEAR(next[j], fit.mass[j], 1e-8);
}

TEST(Turnbull, ExponentialMeanRecovered) {
  std::mt19937_64 rng(100);
  std::exponential_distribution<double> e(1.0 / 100.0);
  const auto fit = turnbull_fit(bracketed(rng, 200, e, 25.0));
  EXPECT_NEAR(summarize(fit).mean, 100.0, 15.0);
}

TEST(Turnbull, HeavyTailDetectedByCv) {
  std::mt19937_64 rng(7);
  const double sigma = std::sqrt(std::log(1.0 + 2.3 * 2.3));
  std::lognormal_distribution<double> ln(std::log(40.0), sigma);
  CensoredSample s;
  std::uniform_real_distribution<double> u(0.9, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = ln(rng);
    s.push_back({{x * u(rng), x / u(rng)}, 1.0});
  }
  const auto sum = summarize(turnbull_fit(s));
  EXPECT_GT(sum.cv, 1.0);
  EXPECT_GT(sum.mean, sum.median);
}

TEST(Turnbull, EmptySampleThrows) {
  try {
    turnbull_fit(CensoredSample{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptySample);
  }
}

TEST(Turnbull, RejectsInvertedInterval) { EXPECT_THROW(turnbull_fit(CensoredSample{{{5, 1}, 1.0}}), Error); }

TEST(Distribution, CdfIsLinearInsideInterval) {
  const auto d = EstimatedDistribution::from_masses({0, 10}, {2, 10}, {0.5, 0.5}, 2);
  EXPECT_DOUBLE_EQ(d.cdf(1.0), 0.25);
  EXPECT_DOUBLE_EQ(d.cdf(5.0), 0.5);
  EXPECT_DOUBLE_EQ(d.cdf(10.0), 1.0);
  EXPECT_DOUBLE_EQ(d.quantile(0.25), 1.0);
  EXPECT_DOUBLE_EQ(d.quantile(0.75), 10.0);
}

TEST(Summarize, PointMass) {
  const std::vector<double> atoms{47.0}, w{1.0};
  const auto s = summarize(EstimatedDistribution::point_masses(atoms, w, 1));
  EXPECT_DOUBLE_EQ(s.mean, 47.0);
  EXPECT_DOUBLE_EQ(s.median, 47.0);
  EXPECT_DOUBLE_EQ(s.stddev, 0.0);
  EXPECT_DOUBLE_EQ(s.cv, 0.0);
}

TEST(Summarize, TwoPoint) {
  const std::vector<double> atoms{0.0, 100.0}, w{1.0, 1.0};
  const auto s = summarize(EstimatedDistribution::point_masses(atoms, w, 2));
  EXPECT_DOUBLE_EQ(s.mean, 50.0);
  EXPECT_DOUBLE_EQ(s.stddev, 50.0);
  EXPECT_DOUBLE_EQ(s.cv, 1.0);
}

TEST(SampleFrom, PointMassDrawsAtom) {
  const std::vector<double> atoms{12.5}, w{1.0};
  for (double v : sample_from(EstimatedDistribution::point_masses(atoms, w, 1), 100, 9u)) EXPECT_EQ(v, 12.5);
}

TEST(SampleFrom, TwoAtomFrequencies) {
  const std::vector<double> atoms{1.0, 2.0}, w{1.0, 1.0};
  const auto draws = sample_from(EstimatedDistribution::point_masses(atoms, w, 2), 100000, 42u);
  const double ones = static_cast<double>(std::count(draws.begin(), draws.end(), 1.0));
  EXPECT_NEAR(ones / 1e5, 0.5, 0.01);
}

TEST(SampleFrom, SameSeedSameSequence) {
  const auto d = EstimatedDistribution::from_masses({0, 5}, {3, 9}, {0.3, 0.7}, 10);
  EXPECT_EQ(sample_from(d, 50, 5u), sample_from(d, 50, 5u));
  EXPECT_NE(sample_from(d, 50, 5u), sample_from(d, 50, 6u));
}
