#include "journeynet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "journeynet/distributions.hpp"
#include "journeynet/error.hpp"

namespace journeynet {
namespace {

// Average ranks (1-based) with ties sharing the mean rank; also returns the
// tie sizes.
std::vector<double> average_ranks(std::span<const double> x, std::vector<std::size_t>* ties = nullptr) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    if (ties && j > i) ties->push_back(j - i + 1);
    i = j + 1;
  }
  return ranks;
}

double two_sided_p(double z) { return std::min(1.0, 2.0 * dist::normal_sf(std::abs(z))); }

void require_at_least_two(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorKind::DegenerateSample, "Mann-Whitney U needs at least two values per sample");
  }
}

}  // namespace

std::string significance_stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  require_at_least_two(a, b);
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<std::size_t> ties;
  const auto ranks = average_ranks(pooled, &ties);

  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  const double n = n1 + n2;
  const double r1 = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(a.size()), 0.0);
  const double u = r1 - n1 * (n1 + 1.0) / 2.0;
  const double mu = n1 * n2 / 2.0;
  double tie_sum = 0.0;
  for (auto t : ties) {
    const double td = static_cast<double>(t);
    tie_sum += td * td * td - td;
  }
  const double var = n1 * n2 / 12.0 * ((n + 1.0) - tie_sum / (n * (n - 1.0)));

  TestResult r;
  r.method = "mann_whitney_u";
  r.statistic = u;
  if (var <= 0.0) {
    r.p_value = 1.0;
    r.notes = "all values tied";
    return r;
  }
  const double z = std::max(0.0, std::abs(u - mu) - 0.5) / std::sqrt(var);
  r.p_value = two_sided_p(z);
  return r;
}

TestResult mann_whitney_u_exact(std::span<const double> a, std::span<const double> b) {
  require_at_least_two(a, b);
  const std::size_t n = a.size() + b.size();
  if (n > 20) throw Error(ErrorKind::InvalidArgument, "exact Mann-Whitney is limited to 20 values");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = average_ranks(pooled);
  const std::size_t n1 = a.size();
  const double offset = static_cast<double>(n1 * (n1 + 1)) / 2.0;
  const double mu = static_cast<double>(n1 * b.size()) / 2.0;
  const double u_obs = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(n1), 0.0) - offset;
  const double extreme = std::abs(u_obs - mu) - 1e-9;

  std::uint64_t hits = 0, total = 0;
  std::vector<std::size_t> pick;
  auto recurse = [&](auto&& self, std::size_t start, double rank_sum) -> void {
    if (pick.size() == n1) {
      ++total;
      if (std::abs(rank_sum - offset - mu) >= extreme) ++hits;
      return;
    }
    for (std::size_t i = start; i + (n1 - pick.size()) <= n; ++i) {
      pick.push_back(i);
      self(self, i + 1, rank_sum + ranks[i]);
      pick.pop_back();
    }
  };
  recurse(recurse, 0, 0.0);

  TestResult r;
  r.method = "mann_whitney_u_exact";
  r.statistic = u_obs;
  r.p_value = static_cast<double>(hits) / static_cast<double>(total);
  return r;
}

TestResult fisher_combine(std::span<const double> pvals) {
  if (pvals.empty()) throw Error(ErrorKind::InvalidP, "fisher_combine needs at least one p-value");
  double stat = 0.0;
  for (double p : pvals) {
    if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidP, "p-values must lie in (0, 1]");
    stat -= 2.0 * std::log(p);
  }
  TestResult r;
  r.method = "fisher_combined";
  r.statistic = stat;
  r.p_value = std::clamp(dist::chi2_sf(stat, 2.0 * static_cast<double>(pvals.size())), 0.0, 1.0);
  return r;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TestResult mc_u_test(const EstimatedDistribution& a, const EstimatedDistribution& b, const McUOptions& opts) {
  if (opts.reps < 1 || opts.n_per_rep < 2) {
    throw Error(ErrorKind::InvalidArgument, "mc_u_test needs reps >= 1 and n_per_rep >= 2");
  }
  std::vector<double> pvals;
  pvals.reserve(opts.reps);
  bool floored = false;
  for (std::size_t rep = 0; rep < opts.reps; ++rep) {
    std::mt19937_64 rng(derive_seed(opts.seed, rep));
    const auto xa = sample_from(a, opts.n_per_rep, rng);
    const auto xb = sample_from(b, opts.n_per_rep, rng);
    double p = mann_whitney_u(xa, xb).p_value;
    if (p < std::numeric_limits<double>::min()) {
      p = std::numeric_limits<double>::min();
      floored = true;
    }
    pvals.push_back(p);
  }
  auto combined = fisher_combine(pvals);
  TestResult r;
  r.method = "monte_carlo_u";
  r.statistic = combined.statistic;
  r.p_value = combined.p_value;
  r.notes = "reps=" + std::to_string(opts.reps) + " n_per_rep=" + std::to_string(opts.n_per_rep) +
            " seed=" + std::to_string(opts.seed);
  if (floored) r.notes += "; replicate p-values below DBL_MIN floored";
  return r;
}

TestResult z_test_means(const DistributionSummary& a, const DistributionSummary& b) {
  if (a.n < 2.0 || b.n < 2.0) throw Error(ErrorKind::DegenerateSample, "z-test needs n >= 2 on both sides");
  if (!std::isfinite(a.stddev) || !std::isfinite(b.stddev)) {
    throw Error(ErrorKind::InvalidArgument, "z-test needs finite standard deviations");
  }
  TestResult r;
  r.method = "z_test_means";
  const double diff = a.mean - b.mean;
  const double se2 = a.stddev * a.stddev / a.n + b.stddev * b.stddev / b.n;
  if (se2 <= 0.0) {
    r.notes = "zero variance on both sides";
    if (diff == 0.0) {
      r.statistic = 0.0;
      r.p_value = 1.0;
    } else {
      r.statistic = std::copysign(std::numeric_limits<double>::infinity(), diff);
      r.p_value = 0.0;
    }
    return r;
  }
  r.statistic = diff / std::sqrt(se2);
  r.p_value = two_sided_p(r.statistic);
  return r;
}

TestResult g_test(const ContingencyTable& table) {
  const std::size_t rows = table.size();
  if (rows < 2 || table.front().size() < 2) {
    throw Error(ErrorKind::DegenerateTable, "G-test needs at least a 2x2 table");
  }
  const std::size_t cols = table.front().size();
  std::vector<double> row_sum(rows, 0.0), col_sum(cols, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (table[i].size() != cols) throw Error(ErrorKind::DegenerateTable, "ragged contingency table");
    for (std::size_t j = 0; j < cols; ++j) {
      const double o = table[i][j];
      if (!(o >= 0.0) || !std::isfinite(o)) throw Error(ErrorKind::DegenerateTable, "cells must be non-negative");
      row_sum[i] += o;
      col_sum[j] += o;
      total += o;
    }
  }
  for (double s : row_sum) {
    if (s <= 0.0) throw Error(ErrorKind::DegenerateTable, "empty row in contingency table");
  }
  for (double s : col_sum) {
    if (s <= 0.0) throw Error(ErrorKind::DegenerateTable, "empty column in contingency table");
  }
  double g = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double o = table[i][j];
      if (o > 0.0) g += o * std::log(o * total / (row_sum[i] * col_sum[j]));
    }
  }
  g = std::max(0.0, 2.0 * g);
  TestResult r;
  r.method = "g_test";
  r.statistic = g;
  r.p_value = std::clamp(dist::chi2_sf(g, static_cast<double>((rows - 1) * (cols - 1))), 0.0, 1.0);
  return r;
}

std::vector<TestResult> tukey_hsd(std::span<const std::vector<double>> groups) {
  if (groups.size() < 2) throw Error(ErrorKind::DegenerateGroup, "Tukey HSD needs at least two groups");
  std::vector<double> means;
  double ssw = 0.0;
  std::size_t total = 0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw Error(ErrorKind::DegenerateGroup, "every group needs at least two values");
    const double m = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
    means.push_back(m);
    for (double x : g) ssw += (x - m) * (x - m);
    total += g.size();
  }
  const double k = static_cast<double>(groups.size());
  const double df = static_cast<double>(total) - k;
  const double mse = ssw / df;

  std::vector<TestResult> out;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      TestResult r;
      r.method = "tukey_hsd";
      r.label = std::to_string(i) + "-" + std::to_string(j);
      const double diff = std::abs(means[i] - means[j]);
      const double se = std::sqrt(mse / 2.0 *
                                  (1.0 / static_cast<double>(groups[i].size()) +
                                   1.0 / static_cast<double>(groups[j].size())));
      if (se <= 0.0) {
        r.notes = "zero within-group variance";
        r.statistic = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        r.p_value = diff == 0.0 ? 1.0 : 0.0;
      } else {
        r.statistic = diff / se;
        r.p_value = std::clamp(1.0 - dist::studentized_range_cdf(r.statistic, k, df), 0.0, 1.0);
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

double sens_slope(std::span<const double> series) {
  std::vector<double> slopes;
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (std::size_t j = i + 1; j < series.size(); ++j) {
      slopes.push_back((series[j] - series[i]) / static_cast<double>(j - i));
    }
  }
  if (slopes.empty()) return 0.0;
  const std::size_t mid = slopes.size() / 2;
  std::nth_element(slopes.begin(), slopes.begin() + static_cast<std::ptrdiff_t>(mid), slopes.end());
  if (slopes.size() % 2 == 1) return slopes[mid];
  const double upper = slopes[mid];
  const double lower = *std::max_element(slopes.begin(), slopes.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

long long mann_kendall_s(std::span<const double> series) {
  long long s = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (std::size_t j = i + 1; j < series.size(); ++j) {
      s += (series[j] > series[i]) - (series[j] < series[i]);
    }
  }
  return s;
}

namespace {

double mk_variance(std::span<const double> series) {
  const double n = static_cast<double>(series.size());
  std::map<double, std::size_t> counts;
  for (double x : series) ++counts[x];
  double tie = 0.0;
  for (const auto& [value, t] : counts) {
    const double td = static_cast<double>(t);
    tie += td * (td - 1.0) * (2.0 * td + 5.0);
  }
  return (n * (n - 1.0) * (2.0 * n + 5.0) - tie) / 18.0;
}

double mk_z(long long s, double var) {
  if (var <= 0.0 || s == 0) return 0.0;
  const double sd = std::sqrt(var);
  return s > 0 ? (static_cast<double>(s) - 1.0) / sd : (static_cast<double>(s) + 1.0) / sd;
}

void require_trend_length(std::span<const double> series) {
  if (series.size() < 4) throw Error(ErrorKind::TooShort, "trend test needs at least four points");
}

}  // namespace

TestResult mann_kendall(std::span<const double> series) {
  require_trend_length(series);
  const long long s = mann_kendall_s(series);
  TestResult r;
  r.method = "mann_kendall";
  r.statistic = mk_z(s, mk_variance(series));
  r.p_value = two_sided_p(r.statistic);
  r.notes = "S=" + std::to_string(s);
  return r;
}

TestResult hamed_rao_trend(std::span<const double> series, double lag_alpha) {
  require_trend_length(series);
  const std::size_t n = series.size();
  const double nd = static_cast<double>(n);
  const long long s = mann_kendall_s(series);
  double var = mk_variance(series);

  const double slope = sens_slope(series);
  std::vector<double> detrended(n);
  for (std::size_t i = 0; i < n; ++i) detrended[i] = series[i] - slope * static_cast<double>(i + 1);
  const auto ranks = average_ranks(detrended);
  const double mean_rank = std::accumulate(ranks.begin(), ranks.end(), 0.0) / nd;
  double c0 = 0.0;
  for (double r : ranks) c0 += (r - mean_rank) * (r - mean_rank);

  const double bound = dist::normal_quantile(1.0 - lag_alpha / 2.0) / std::sqrt(nd);
  double sni = 0.0;
  std::size_t significant = 0;
  if (c0 > 0.0) {
    for (std::size_t lag = 1; lag < n; ++lag) {
      double ck = 0.0;
      for (std::size_t t = 0; t + lag < n; ++t) ck += (ranks[t] - mean_rank) * (ranks[t + lag] - mean_rank);
      const double rho = ck / c0;
      if (std::abs(rho) > bound) {
        const double m = nd - static_cast<double>(lag);
        sni += m * (m - 1.0) * (m - 2.0) * rho;
        ++significant;
      }
    }
  }
  double factor = 1.0 + 2.0 / (nd * (nd - 1.0) * (nd - 2.0)) * sni;
  TestResult r;
  r.method = "hamed_rao";
  r.notes = "S=" + std::to_string(s) + " significant_lags=" + std::to_string(significant);
  if (factor <= 0.0) {
    factor = 1.0;
    r.notes += "; non-positive correction factor ignored";
  }
  var *= factor;
  r.statistic = mk_z(s, var);
  r.p_value = two_sided_p(r.statistic);
  return r;
}

std::vector<HolmDecision> holm_bonferroni(std::span<const double> pvals, double alpha, std::size_t family_size) {
  for (double p : pvals) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidP, "p-values must lie in [0, 1]");
  }
  const std::size_t m = pvals.size();
  const std::size_t family = std::max(m, family_size);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return pvals[a] < pvals[b]; });
  std::vector<HolmDecision> out(m);
  double running = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double adj = std::min(1.0, static_cast<double>(family - k) * pvals[order[k]]);
    running = std::max(running, adj);
    out[order[k]].corrected_p = running;
    out[order[k]].reject = running <= alpha;
  }
  return out;
}

void apply_holm(std::vector<TestResult>& results, double alpha, std::size_t family_size) {
  std::vector<double> p;
  p.reserve(results.size());
  for (const auto& r : results) p.push_back(r.p_value);
  const auto adj = holm_bonferroni(p, alpha, family_size);
  for (std::size_t i = 0; i < results.size(); ++i) {
    results[i].corrected_p = adj[i].corrected_p;
    results[i].n_comparisons = std::max(results.size(), family_size);
    results[i].alpha = alpha;
  }
}

}  // namespace journeynet
