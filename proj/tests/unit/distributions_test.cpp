#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

#include "journeynet/distributions.hpp"

namespace jd = journeynet::dist;

TEST(Normal, CdfAndTailMatchBoost) {
  boost::math::normal_distribution<> n;
  for (double x = -8.0; x <= 8.0; x += 0.37) {
    EXPECT_NEAR(jd::normal_cdf(x), boost::math::cdf(n, x), 1e-14);
    const double tail = boost::math::cdf(boost::math::complement(n, x));
    EXPECT_NEAR(jd::normal_sf(x), tail, 1e-12 * tail + 1e-300);
  }
}

TEST(Normal, QuantileInvertsCdf) {
  boost::math::normal_distribution<> n;
  for (double p : {1e-12, 1e-6, 0.001, 0.025, 0.3, 0.5, 0.77, 0.975, 0.999999}) {
    EXPECT_NEAR(jd::normal_quantile(p), boost::math::quantile(n, p), 1e-9);
  }
}

TEST(IncompleteGamma, MatchesBoost) {
  for (double a : {0.5, 1.0, 2.5, 10.0, 40.0}) {
    for (double x : {0.01, 0.5, 1.0, 3.0, 9.0, 30.0, 80.0}) {
      EXPECT_NEAR(jd::gamma_p(a, x), boost::math::gamma_p(a, x), 1e-12);
      EXPECT_NEAR(jd::gamma_q(a, x), boost::math::gamma_q(a, x), 1e-12);
    }
  }
}

TEST(ChiSquared, SurvivalMatchesBoost) {
  for (double df : {1.0, 2.0, 5.0, 20.0, 200.0}) {
    boost::math::chi_squared_distribution<> c(df);
    for (double x : {0.1, 1.0, 4.0, 15.0, 60.0, 300.0}) {
      const double ref = boost::math::cdf(boost::math::complement(c, x));
      EXPECT_NEAR(jd::chi2_sf(x, df), ref, 1e-12 + 1e-10 * ref);
    }
  }
  EXPECT_EQ(jd::chi2_sf(0.0, 3.0), 1.0);
}

TEST(StudentizedRange, TwoMeansReducesToT) {
  // For k = 2, Q = sqrt(2) |T|.
  for (double df : {5.0, 20.0, 100.0}) {
    boost::math::students_t_distribution<> t(df);
    for (double q : {0.5, 1.5, 3.0, 5.0}) {
      const double ref = 1.0 - 2.0 * boost::math::cdf(boost::math::complement(t, q / std::sqrt(2.0)));
      EXPECT_NEAR(jd::studentized_range_cdf(q, 2, df), ref, 1e-6);
    }
  }
}

TEST(StudentizedRange, KnownCriticalValues) {
  // Standard table values q(0.95; k, df).
  EXPECT_NEAR(jd::studentized_range_cdf(3.578, 3, 20), 0.95, 1e-3);
  EXPECT_NEAR(jd::studentized_range_cdf(3.845, 4, 30), 0.95, 1e-3);
  EXPECT_NEAR(jd::studentized_range_cdf(3.314, 3, 1e6), 0.95, 1e-3);
}
