#pragma once

// Independent reference computations shared by the unit and acceptance suites.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "journeynet/network.hpp"
#include "journeynet/temporal.hpp"

namespace oracle {

inline std::string node_name(std::size_t i) { return "n" + std::to_string(i / 10) + std::to_string(i % 10); }

/// Random events over `n` nodes; each ordered pair (self-loops included) is
/// present with probability `density`, with a count in [1, 5].
inline std::vector<journeynet::JourneyEvent> random_events(std::mt19937_64& rng, std::size_t n, double density,
                                                            int period = 0, bool self_loops = true) {
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<int> count(1, 5);
  std::vector<journeynet::JourneyEvent> events;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j && !self_loops) continue;
      if (keep(rng)) {
        events.push_back({node_name(i), node_name(j), period, static_cast<std::uint64_t>(count(rng))});
      }
    }
  }
  return events;
}

inline Eigen::MatrixXd dense_adjacency(const journeynet::JourneyNetwork& net, bool drop_loops) {
  const auto n = static_cast<Eigen::Index>(net.node_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : net.edges()) {
    if (drop_loops && e.is_self_loop()) continue;
    a(static_cast<Eigen::Index>(e.source), static_cast<Eigen::Index>(e.target)) = 1.0;
  }
  return a;
}

/// Cosine between `v` and its projection onto the principal eigenspace of the
/// symmetric matrix `m`. Eigenvalues within `cluster_tol * lambda_max` of the
/// largest count as principal, which handles degenerate spectra.
inline double principal_cosine(const Eigen::MatrixXd& m, const std::vector<double>& v, double cluster_tol = 1e-8) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const auto& values = es.eigenvalues();
  const double top = values(values.size() - 1);
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  Eigen::VectorXd proj = Eigen::VectorXd::Zero(x.size());
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values(k) >= top - cluster_tol * std::max(top, 1.0)) {
      const Eigen::VectorXd u = es.eigenvectors().col(k);
      proj += u * u.dot(x);
    }
  }
  const double denom = x.norm() * proj.norm();
  return denom > 0 ? x.dot(proj) / denom : 0.0;
}

/// Directed edges (i, j) whose reverse (j, i) is present, by pairwise scan.
inline double reciprocity_brute_force(const journeynet::JourneyNetwork& net, bool include_self_loops) {
  std::size_t total = 0;
  std::size_t mutual = 0;
  const auto edges = net.edges();
  for (const auto& e : edges) {
    if (!include_self_loops && e.is_self_loop()) continue;
    ++total;
    for (const auto& f : edges) {
      if (f.source == e.target && f.target == e.source) {
        ++mutual;
        break;
      }
    }
  }
  return static_cast<double>(mutual) / static_cast<double>(total);
}

/// Per-node persistence by explicit loops over dense 0/1 matrices:
/// gamma_i = 1/(T-1) sum_t sum_j a_ij(t) a_ij(t+1) / sqrt(k_i(t) k_i(t+1)),
/// with a zero term when either degree vanishes.
inline std::vector<double> temporal_loops(const journeynet::NetworkSeries& series, journeynet::TemporalDirection dir) {
  const std::size_t n = series.universe.size();
  const std::size_t T = series.size();
  std::vector<std::vector<std::vector<int>>> a(T, std::vector<std::vector<int>>(n, std::vector<int>(n, 0)));
  for (std::size_t t = 0; t < T; ++t) {
    const auto& net = series.windows[t];
    for (const auto& e : net.edges()) {
      const auto s = static_cast<std::size_t>(
          std::find(series.universe.begin(), series.universe.end(), net.nodes()[e.source]) - series.universe.begin());
      const auto d = static_cast<std::size_t>(
          std::find(series.universe.begin(), series.universe.end(), net.nodes()[e.target]) - series.universe.begin());
      if (s == d) continue;
      a[t][s][d] = 1;
    }
  }
  auto entry = [&](std::size_t t, std::size_t i, std::size_t j) {
    switch (dir) {
      case journeynet::TemporalDirection::Out: return a[t][i][j];
      case journeynet::TemporalDirection::In: return a[t][j][i];
      case journeynet::TemporalDirection::Undirected: return std::max(a[t][i][j], a[t][j][i]);
    }
    return 0;
  };
  std::vector<double> gamma(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t t = 0; t + 1 < T; ++t) {
      double num = 0.0, k0 = 0.0, k1 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        num += entry(t, i, j) * entry(t + 1, i, j);
        k0 += entry(t, i, j);
        k1 += entry(t + 1, i, j);
      }
      if (k0 > 0 && k1 > 0) sum += num / std::sqrt(k0 * k1);
    }
    gamma[i] = sum / static_cast<double>(T - 1);
  }
  return gamma;
}

}  // namespace oracle
