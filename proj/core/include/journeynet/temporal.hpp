#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "journeynet/geo.hpp"
#include "journeynet/network.hpp"
#include "journeynet/survival.hpp"

namespace journeynet {

/// Consecutive network snapshots over a shared node universe.
struct NetworkSeries {
  std::vector<std::string> universe;  ///< sorted union of all snapshot nodes
  std::vector<int> window_index;      ///< absolute index: floor(period / window_length)
  int window_length = 1;
  std::vector<JourneyNetwork> windows;

  std::size_t size() const noexcept { return windows.size(); }
};

/// Groups events into windows of `window_length` periods aligned to multiples
/// of the window length, one snapshot per window from the first to the last
/// occupied one (empty windows become edgeless snapshots). Self-loop events
/// are dropped unless `self_loops` is set.
NetworkSeries slice_series(std::span<const JourneyEvent> events, int window_length, bool self_loops);

/// Wraps explicit snapshots (window indices 0..T-1).
NetworkSeries make_series(std::vector<JourneyNetwork> windows);

enum class TemporalDirection { Undirected, In, Out };

std::string_view to_string(TemporalDirection d) noexcept;

enum class UndefinedTerm {
  /// A window pair where the node has no edges on either side contributes 0
  /// and still counts toward the 1/(T-1) average.
  CountAsZero,
  /// Such pairs are left out of the node's average.
  Skip,
};

struct TemporalOptions {
  bool include_self_loops = false;
  UndefinedTerm undefined = UndefinedTerm::CountAsZero;
};

struct TemporalCorr {
  TemporalDirection direction = TemporalDirection::Undirected;
  std::vector<std::string> nodes;
  std::vector<double> values;
  /// True when the node has at least one window pair with edges on both sides.
  std::vector<bool> defined;
  double overall = 0.0;  ///< mean over defined nodes
  std::size_t defined_count = 0;
};

/// Per-node edge persistence between consecutive snapshots: overlap of the
/// neighbour sets divided by the geometric mean of their sizes, averaged over
/// window pairs. Undirected mode symmetrizes each snapshot first.
/// Throws Error{TooFewWindows} when T < 2.
TemporalCorr temporal_correlation(const NetworkSeries& series, TemporalDirection direction,
                                  const TemporalOptions& opts = {});

struct WindowSummary {
  int window = 0;
  std::uint64_t total_weight = 0;
  std::uint64_t discordant_weight = 0;
  std::optional<double> self_loop_share;  ///< unset for an empty window
  std::optional<double> mean_km;          ///< unset without discordant journeys
  std::optional<double> median_km;
};

/// Discordant journeys of each window as a censored sample; both orientations
/// of a pair are looked up. Throws Error{MissingInterval} for absent pairs.
CensoredSample discordant_sample(const JourneyNetwork& net, const IntervalTable& intervals);

std::vector<WindowSummary> series_summaries(const NetworkSeries& series, const IntervalTable& intervals,
                                            const TurnbullOptions& fit = {});

}  // namespace journeynet
