#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "journeynet/geo.hpp"

namespace journeynet {

/// One censored journey length with its multiplicity (edge weight).
struct CensoredObservation {
  DistanceInterval interval;
  double weight = 1.0;
};

using CensoredSample = std::vector<CensoredObservation>;

/// Nonparametric distribution supported on disjoint closed intervals
/// [lower[j], upper[j]] (sorted, possibly degenerate) carrying mass[j].
///
/// Mass is spread uniformly inside each interval, so the CDF is piecewise
/// linear across an interval and jumps at degenerate ones. F is
/// right-continuous and quantile(q) = inf{d : F(d) >= q}.
struct EstimatedDistribution {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> mass;
  double sample_size = 0.0;  ///< total observation weight behind the fit
  int iterations = 0;
  bool converged = true;
  /// L-infinity distance between the last iterate and its EM image.
  double residual = 0.0;

  /// Validates ordering, disjointness and unit total mass (within 1e-8).
  static EstimatedDistribution from_masses(std::vector<double> lower, std::vector<double> upper,
                                           std::vector<double> mass, double sample_size);
  /// Degenerate intervals at `atoms` with masses proportional to `weights`.
  static EstimatedDistribution point_masses(std::span<const double> atoms, std::span<const double> weights,
                                            double sample_size);

  std::size_t size() const noexcept { return mass.size(); }
  double cdf(double d) const;
  double survival(double d) const { return 1.0 - cdf(d); }
  double quantile(double q) const;
};

struct TurnbullOptions {
  double tol = 1e-9;
  int max_iter = 10000;
};

/// Turnbull's NPMLE for interval-censored data: mass is restricted to the
/// innermost intervals of the observed endpoints and fitted by EM
/// self-consistency until the largest mass change drops below `tol`.
/// Throws Error{EmptySample} for an empty sample and Error{InvalidArgument}
/// for malformed intervals or non-positive weights. Non-convergence is
/// reported through `converged`.
EstimatedDistribution turnbull_fit(std::span<const CensoredObservation> sample, const TurnbullOptions& opts = {});

/// One EM self-consistency update, exposed so callers can audit a fit.
std::vector<double> turnbull_em_step(std::span<const CensoredObservation> sample, const EstimatedDistribution& dist);

struct DistributionSummary {
  double mean = 0.0;
  double stddev = 0.0;
  double cv = 0.0;
  double median = 0.0;
  double q90 = 0.0;
  double q95 = 0.0;
  double n = 0.0;
};

/// Moments place each interval's mass at its midpoint; quantiles invert F.
DistributionSummary summarize(const EstimatedDistribution& dist);

std::vector<double> sample_from(const EstimatedDistribution& dist, std::size_t n, std::mt19937_64& rng);
std::vector<double> sample_from(const EstimatedDistribution& dist, std::size_t n, std::uint64_t seed);

}  // namespace journeynet
