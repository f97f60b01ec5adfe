#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "journeynet/geo.hpp"

namespace journeynet {

/// One aggregated origin -> destination record: `count` journeys from the
/// region of residence (origin) to the region where the event happened.
struct JourneyEvent {
  std::string origin;
  std::string destination;
  int period = 0;
  std::uint64_t count = 1;

  friend bool operator==(const JourneyEvent&, const JourneyEvent&) = default;
};

struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  std::uint64_t weight = 0;

  bool is_self_loop() const noexcept { return source == target; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted directed graph over regions. Immutable once built; nodes are kept
/// in lexicographic order and edges sorted by (source, target).
class JourneyNetwork {
 public:
  JourneyNetwork() = default;
  /// Duplicate (source, target) entries are summed. Throws Error{InvalidArgument}
  /// for zero weights, out-of-range endpoints or duplicate node ids.
  JourneyNetwork(std::vector<std::string> nodes, std::vector<Edge> edges,
                 std::optional<int> period = std::nullopt);

  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::optional<int> period() const noexcept { return period_; }
  bool empty() const noexcept { return nodes_.empty(); }

  std::optional<std::size_t> index_of(std::string_view id) const;
  /// Zero when the edge is absent or either id is unknown.
  std::uint64_t weight(std::string_view origin, std::string_view destination) const;
  bool has_edge(std::size_t source, std::size_t target) const;

  std::uint64_t total_weight() const noexcept;
  std::uint64_t self_loop_weight() const noexcept;
  std::size_t self_loop_count() const noexcept;

  /// Same node set, every edge flipped.
  JourneyNetwork reversed() const;
  /// Dense 0/1 adjacency, row-major N*N.
  std::vector<std::uint8_t> adjacency() const;

 private:
  std::vector<std::string> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Edge> edges_;
  std::optional<int> period_;
};

struct BuildOptions {
  /// Keep only events from this period.
  std::optional<int> period;
  /// When set, every endpoint must be a member; otherwise Error{UnknownRegion}.
  const std::set<std::string>* known_regions = nullptr;
  /// Extra nodes (e.g. all regions passing a coverage filter) added even when
  /// no retained event touches them.
  std::vector<std::string> extra_nodes;
};

JourneyNetwork build_network(std::span<const JourneyEvent> events, const BuildOptions& opts = {});

/// Drops self-loop edges, then drops nodes left without any incident edge.
JourneyNetwork remove_self_loops(const JourneyNetwork& net);

enum class DegreeKind { WeightedIn, WeightedOut, UnweightedIn, UnweightedOut };

std::string_view to_string(DegreeKind kind) noexcept;

struct DegreeVector {
  DegreeKind kind = DegreeKind::WeightedIn;
  bool self_loops_included = false;
  std::vector<double> values;  ///< aligned with JourneyNetwork::nodes()
};

DegreeVector degree_vector(const JourneyNetwork& net, DegreeKind kind, bool include_self_loops);

struct ReciprocityOptions {
  /// A self-loop is its own reverse edge and so counts as reciprocated.
  bool include_self_loops = true;
};

/// Fraction of directed edges whose reverse edge also exists.
/// Throws Error{EmptyNetwork} when there is no edge to count.
double reciprocity(const JourneyNetwork& net, const ReciprocityOptions& opts = {});

struct HitsOptions {
  double tol = 1e-10;
  int max_iter = 1000;
};

struct HitsScores {
  std::vector<std::string> nodes;
  std::vector<double> hub;
  std::vector<double> authority;
  int iterations = 0;
  bool converged = false;
};

/// Hub/authority scores on the unweighted adjacency with self-loops ignored.
/// Starts from all-ones, alternates hub then authority updates and normalizes
/// each to unit Euclidean norm. Non-convergence is reported through
/// `converged`, not thrown. Throws Error{EmptyNetwork} if no non-loop edge exists.
HitsScores hits(const JourneyNetwork& net, const HitsOptions& opts = {});

struct BasicStats {
  bool empty = true;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t self_loop_edges = 0;
  std::uint64_t total_weight = 0;
  std::uint64_t self_loop_weight = 0;
  double self_loop_share = 0.0;
  double max_weighted_in = 0.0;
  double max_weighted_out = 0.0;
  double mean_weighted_degree = 0.0;  ///< in and out means coincide
  double max_unweighted_in = 0.0;
  double max_unweighted_out = 0.0;
  double mean_unweighted_degree = 0.0;
  std::optional<double> reciprocity;
  /// Share of discordant (non-loop) weight between touching regions; only set
  /// when an adjacency list is supplied and discordant weight is positive.
  std::optional<double> adjacent_discordant_share;
};

/// Table-style summary. Degrees count self-loops when the network has them,
/// so run it on remove_self_loops(net) for the loop-free column.
BasicStats summary_stats(const JourneyNetwork& net, const std::vector<RegionPair>* adjacency = nullptr);

}  // namespace journeynet
