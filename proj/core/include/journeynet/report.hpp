#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "journeynet/survival.hpp"

namespace journeynet::report {

struct Series {
  std::string name;
  EstimatedDistribution dist;
};

/// Step plot of S(d) = 1 - F(d) for each series, log-scaled distance axis.
std::string survival_svg(std::span<const Series> series, const std::string& title);

struct Bar {
  std::string label;
  double value = 0.0;
  double error = 0.0;  ///< half-width of the whisker; 0 draws none
};

std::string bar_svg(std::span<const Bar> bars, const std::string& title, const std::string& y_label);

/// Sorted scores against rank with the knee (1-based rank) marked.
std::string elbow_svg(std::span<const double> sorted_desc, std::optional<std::size_t> knee_rank,
                      const std::string& title);

}  // namespace journeynet::report
