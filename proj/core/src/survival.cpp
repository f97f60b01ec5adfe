#include "journeynet/survival.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "journeynet/error.hpp"

namespace journeynet {
namespace {

constexpr double kMassTolerance = 1e-8;

struct Innermost {
  std::vector<double> lower;
  std::vector<double> upper;
};

// Innermost intervals of closed censoring intervals: every left endpoint that
// is immediately followed (in sorted endpoint order, lefts before rights on
// ties) by a right endpoint.
Innermost innermost_intervals(std::span<const CensoredObservation> sample) {
  struct Endpoint {
    double value;
    int side;  // 0 = left, 1 = right
    bool operator<(const Endpoint& o) const { return value != o.value ? value < o.value : side < o.side; }
  };
  std::vector<Endpoint> ends;
  ends.reserve(sample.size() * 2);
  for (const auto& obs : sample) {
    ends.push_back({obs.interval.lower_km, 0});
    ends.push_back({obs.interval.upper_km, 1});
  }
  std::sort(ends.begin(), ends.end());
  Innermost out;
  for (std::size_t k = 0; k + 1 < ends.size(); ++k) {
    if (ends[k].side == 0 && ends[k + 1].side == 1) {
      if (!out.lower.empty() && out.lower.back() == ends[k].value && out.upper.back() == ends[k + 1].value) continue;
      out.lower.push_back(ends[k].value);
      out.upper.push_back(ends[k + 1].value);
    }
  }
  return out;
}

struct Coverage {
  std::vector<std::size_t> first;
  std::vector<std::size_t> last;  // inclusive
};

Coverage coverage_ranges(std::span<const CensoredObservation> sample, const std::vector<double>& lower,
                         const std::vector<double>& upper) {
  Coverage c;
  c.first.reserve(sample.size());
  c.last.reserve(sample.size());
  for (const auto& obs : sample) {
    const auto lo = std::lower_bound(lower.begin(), lower.end(), obs.interval.lower_km) - lower.begin();
    const auto hi = std::upper_bound(upper.begin(), upper.end(), obs.interval.upper_km) - upper.begin();
    if (hi <= lo) {
      throw Error(ErrorKind::InvalidArgument, "observation does not contain any support interval of the fit");
    }
    c.first.push_back(static_cast<std::size_t>(lo));
    c.last.push_back(static_cast<std::size_t>(hi - 1));
  }
  return c;
}

std::vector<double> em_update(std::span<const CensoredObservation> sample, const Coverage& cov,
                              const std::vector<double>& p, double total_weight) {
  const std::size_t m = p.size();
  std::vector<double> prefix(m + 1, 0.0);
  for (std::size_t j = 0; j < m; ++j) prefix[j + 1] = prefix[j] + p[j];
  std::vector<double> diff(m + 1, 0.0);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double denom = prefix[cov.last[i] + 1] - prefix[cov.first[i]];
    if (denom <= 0.0) continue;
    const double share = sample[i].weight / denom;
    diff[cov.first[i]] += share;
    diff[cov.last[i] + 1] -= share;
  }
  std::vector<double> next(m);
  double running = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    running += diff[j];
    next[j] = p[j] * running / total_weight;
  }
  return next;
}

void validate_sample(std::span<const CensoredObservation> sample) {
  if (sample.empty()) throw Error(ErrorKind::EmptySample, "turnbull_fit needs at least one interval");
  for (const auto& obs : sample) {
    const auto& iv = obs.interval;
    if (!(iv.lower_km >= 0.0) || !(iv.upper_km >= iv.lower_km) || !std::isfinite(iv.upper_km)) {
      throw Error(ErrorKind::InvalidArgument, "censoring interval must satisfy 0 <= lower <= upper < inf");
    }
    if (!(obs.weight > 0.0) || !std::isfinite(obs.weight)) {
      throw Error(ErrorKind::InvalidArgument, "observation weights must be positive");
    }
  }
}

}  // namespace

EstimatedDistribution EstimatedDistribution::from_masses(std::vector<double> lower, std::vector<double> upper,
                                                         std::vector<double> mass, double sample_size) {
  if (lower.size() != upper.size() || lower.size() != mass.size() || mass.empty()) {
    throw Error(ErrorKind::InvalidArgument, "support and mass vectors must be non-empty and aligned");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < mass.size(); ++j) {
    if (!(upper[j] >= lower[j]) || mass[j] < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "invalid support interval or negative mass");
    }
    if (j > 0 && lower[j] < upper[j - 1]) {
      throw Error(ErrorKind::InvalidArgument, "support intervals must be sorted and disjoint");
    }
    total += mass[j];
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw Error(ErrorKind::InvalidArgument, "masses must sum to one");
  }
  EstimatedDistribution d;
  d.lower = std::move(lower);
  d.upper = std::move(upper);
  d.mass = std::move(mass);
  d.sample_size = sample_size;
  return d;
}

EstimatedDistribution EstimatedDistribution::point_masses(std::span<const double> atoms,
                                                          std::span<const double> weights, double sample_size) {
  if (atoms.size() != weights.size() || atoms.empty()) {
    throw Error(ErrorKind::InvalidArgument, "atoms and weights must be non-empty and aligned");
  }
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return atoms[a] < atoms[b]; });
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<double> at, mass;
  for (auto k : order) {
    if (!at.empty() && at.back() == atoms[k]) {
      mass.back() += weights[k] / total;
    } else {
      at.push_back(atoms[k]);
      mass.push_back(weights[k] / total);
    }
  }
  return from_masses(at, at, std::move(mass), sample_size);
}

double EstimatedDistribution::cdf(double d) const {
  double f = 0.0;
  for (std::size_t j = 0; j < mass.size(); ++j) {
    if (d >= upper[j]) {
      f += mass[j];
    } else if (d > lower[j]) {
      f += mass[j] * (d - lower[j]) / (upper[j] - lower[j]);
    } else {
      break;
    }
  }
  return std::min(f, 1.0);
}

double EstimatedDistribution::quantile(double q) const {
  q = std::clamp(q, 0.0, 1.0);
  double cum = 0.0;
  std::size_t last = 0;
  for (std::size_t j = 0; j < mass.size(); ++j) {
    if (mass[j] <= 0.0) continue;
    last = j;
    const double need = q - cum;
    if (need <= mass[j] * (1.0 + 1e-12)) {
      const double frac = std::clamp(need / mass[j], 0.0, 1.0);
      return lower[j] + frac * (upper[j] - lower[j]);
    }
    cum += mass[j];
  }
  return upper[last];
}

EstimatedDistribution turnbull_fit(std::span<const CensoredObservation> sample, const TurnbullOptions& opts) {
  validate_sample(sample);
  auto support = innermost_intervals(sample);
  const auto cov = coverage_ranges(sample, support.lower, support.upper);
  double total_weight = 0.0;
  for (const auto& obs : sample) total_weight += obs.weight;

  const std::size_t m = support.lower.size();
  std::vector<double> p(m, 1.0 / static_cast<double>(m));
  EstimatedDistribution d;
  d.converged = false;
  for (int it = 1; it <= opts.max_iter; ++it) {
    auto next = em_update(sample, cov, p, total_weight);
    double change = 0.0;
    for (std::size_t j = 0; j < m; ++j) change = std::max(change, std::abs(next[j] - p[j]));
    p = std::move(next);
    d.iterations = it;
    d.residual = change;
    if (change < opts.tol) {
      d.converged = true;
      break;
    }
  }
  // Renormalize away floating drift so the mass invariant holds tightly.
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= total;

  d.lower = std::move(support.lower);
  d.upper = std::move(support.upper);
  d.mass = std::move(p);
  d.sample_size = total_weight;
  return d;
}

std::vector<double> turnbull_em_step(std::span<const CensoredObservation> sample, const EstimatedDistribution& dist) {
  validate_sample(sample);
  const auto cov = coverage_ranges(sample, dist.lower, dist.upper);
  double total_weight = 0.0;
  for (const auto& obs : sample) total_weight += obs.weight;
  return em_update(sample, cov, dist.mass, total_weight);
}

DistributionSummary summarize(const EstimatedDistribution& dist) {
  DistributionSummary s;
  s.n = dist.sample_size;
  for (std::size_t j = 0; j < dist.size(); ++j) s.mean += dist.mass[j] * 0.5 * (dist.lower[j] + dist.upper[j]);
  double var = 0.0;
  for (std::size_t j = 0; j < dist.size(); ++j) {
    const double dev = 0.5 * (dist.lower[j] + dist.upper[j]) - s.mean;
    var += dist.mass[j] * dev * dev;
  }
  s.stddev = std::sqrt(var);
  s.cv = s.mean > 0.0 ? s.stddev / s.mean : 0.0;
  s.median = dist.quantile(0.5);
  s.q90 = dist.quantile(0.90);
  s.q95 = dist.quantile(0.95);
  return s;
}

std::vector<double> sample_from(const EstimatedDistribution& dist, std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& x : out) x = dist.quantile(unif(rng));
  return out;
}

std::vector<double> sample_from(const EstimatedDistribution& dist, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_from(dist, n, rng);
}

}  // namespace journeynet
