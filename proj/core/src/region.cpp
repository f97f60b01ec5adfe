#include "journeynet/region.hpp"

#include <algorithm>

namespace journeynet {

std::string_view to_string(Urbanicity u) noexcept {
  switch (u) {
    case Urbanicity::LargeCentralMetro: return "large_central_metro";
    case Urbanicity::LargeFringeMetro: return "large_fringe_metro";
    case Urbanicity::MediumMetro: return "medium_metro";
    case Urbanicity::SmallMetro: return "small_metro";
    case Urbanicity::Micropolitan: return "micropolitan";
    case Urbanicity::Noncore: return "noncore";
  }
  return "unknown";
}

std::optional<Urbanicity> parse_urbanicity(std::string_view text) {
  for (auto u : kAllUrbanicity) {
    if (text == to_string(u) || text == std::to_string(static_cast<int>(u))) return u;
  }
  return std::nullopt;
}

std::set<int> coverage_windows(const CoverageTable& coverage) {
  std::set<int> windows;
  for (const auto& [region, by_window] : coverage) {
    for (const auto& [w, value] : by_window) windows.insert(w);
  }
  return windows;
}

double min_coverage(const CoverageTable& coverage, const std::string& region, const std::set<int>& windows) {
  auto it = coverage.find(region);
  if (it == coverage.end()) return 0.0;
  double lowest = 1.0;
  for (int w : windows) {
    auto found = it->second.find(w);
    lowest = std::min(lowest, found == it->second.end() ? 0.0 : found->second);
  }
  return lowest;
}

std::set<std::string> regions_meeting_coverage(const CoverageTable& coverage, const std::set<std::string>& candidates,
                                               double beta) {
  const auto windows = coverage_windows(coverage);
  std::set<std::string> kept;
  for (const auto& id : candidates) {
    if (beta <= 0.0 || min_coverage(coverage, id, windows) >= beta) kept.insert(id);
  }
  return kept;
}

}  // namespace journeynet
