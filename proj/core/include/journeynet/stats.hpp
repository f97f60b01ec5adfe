#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "journeynet/survival.hpp"

namespace journeynet {

struct TestResult {
  std::string method;
  std::string label;  ///< which comparison, e.g. "authority vs all"
  double statistic = 0.0;
  double p_value = 1.0;
  std::optional<double> corrected_p;
  std::optional<std::size_t> n_comparisons;
  std::optional<double> alpha;
  std::string notes;
};

/// "*", "**", "***" for p below 0.05, 0.01, 0.001; empty otherwise.
std::string significance_stars(double p);

/// Two-sided Mann-Whitney U with the tie-corrected, continuity-corrected
/// normal approximation. Throws Error{DegenerateSample} if either side has
/// fewer than two values.
TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

/// Exact two-sided permutation p-value of U (|U - mean| as extreme or more),
/// by enumerating every split. Limited to |a| + |b| <= 20.
TestResult mann_whitney_u_exact(std::span<const double> a, std::span<const double> b);

/// -2 sum ln p against chi-squared with 2k degrees of freedom.
/// Throws Error{InvalidP} for any p outside (0, 1].
TestResult fisher_combine(std::span<const double> pvals);

/// Child seed for stream `index` of a master seed (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

struct McUOptions {
  std::size_t n_per_rep = 500;
  std::size_t reps = 100;
  std::uint64_t seed = 0;
};

/// Monte Carlo U-test: draws `n_per_rep` values from each distribution per
/// replicate, runs mann_whitney_u and Fisher-combines the replicate p-values.
/// Replicates reuse the same fitted distributions, so they are independent
/// only conditionally on the fits.
TestResult mc_u_test(const EstimatedDistribution& a, const EstimatedDistribution& b, const McUOptions& opts);

/// Two-sided z-test on the means of two fitted distributions using their
/// summary standard deviations and sample sizes. Throws Error{DegenerateSample}
/// when either n < 2.
TestResult z_test_means(const DistributionSummary& a, const DistributionSummary& b);

using ContingencyTable = std::vector<std::vector<double>>;

/// G-test of independence. Throws Error{DegenerateTable} for ragged tables,
/// negative cells, empty rows/columns or fewer than two rows or columns.
TestResult g_test(const ContingencyTable& table);

/// Tukey-Kramer pairwise comparisons, one result per pair (i < j) in
/// lexicographic pair order, labelled "i-j". Throws Error{DegenerateGroup}
/// for fewer than two groups or a group with fewer than two values.
std::vector<TestResult> tukey_hsd(std::span<const std::vector<double>> groups);

/// Median of pairwise slopes.
double sens_slope(std::span<const double> series);

/// Mann-Kendall S = sum over i < j of sign(x_j - x_i).
long long mann_kendall_s(std::span<const double> series);

/// Mann-Kendall S with tie-corrected variance and no autocorrelation adjustment.
TestResult mann_kendall(std::span<const double> series);

/// Mann-Kendall with the Hamed-Rao variance correction: the series is
/// detrended by Sen's slope, ranked, and rank autocorrelations significant at
/// `lag_alpha` inflate Var(S). Throws Error{TooShort} below four points.
TestResult hamed_rao_trend(std::span<const double> series, double lag_alpha = 0.05);

struct HolmDecision {
  double corrected_p = 1.0;
  bool reject = false;
};

/// Holm step-down adjustment; output aligned with the input order.
/// `family_size` declares a larger correction family than the p-values given
/// (0 means the family is exactly `pvals`).
std::vector<HolmDecision> holm_bonferroni(std::span<const double> pvals, double alpha = 0.05,
                                          std::size_t family_size = 0);

/// Applies Holm to `results` in place, filling corrected_p, n_comparisons and alpha.
void apply_holm(std::vector<TestResult>& results, double alpha = 0.05, std::size_t family_size = 0);

}  // namespace journeynet
