#include "journeynet/network.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "journeynet/error.hpp"

namespace journeynet {

JourneyNetwork::JourneyNetwork(std::vector<std::string> nodes, std::vector<Edge> edges,
                               std::optional<int> period)
    : nodes_(std::move(nodes)), period_(period) {
  std::vector<std::size_t> order(nodes_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return nodes_[a] < nodes_[b]; });
  std::vector<std::size_t> remap(nodes_.size());
  std::vector<std::string> sorted;
  sorted.reserve(nodes_.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && nodes_[order[k]] == sorted.back()) {
      throw Error(ErrorKind::InvalidArgument, "duplicate node id '" + sorted.back() + "'");
    }
    remap[order[k]] = k;
    sorted.push_back(std::move(nodes_[order[k]]));
  }
  nodes_ = std::move(sorted);
  for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i], i);

  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> merged;
  for (const auto& e : edges) {
    if (e.source >= nodes_.size() || e.target >= nodes_.size()) {
      throw Error(ErrorKind::InvalidArgument, "edge endpoint out of range");
    }
    if (e.weight == 0) throw Error(ErrorKind::InvalidArgument, "edge weights must be positive");
    merged[{remap[e.source], remap[e.target]}] += e.weight;
  }
  edges_.reserve(merged.size());
  for (const auto& [key, w] : merged) edges_.push_back({key.first, key.second, w});
}

std::optional<std::size_t> JourneyNetwork::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::vector<Edge>::const_iterator find_edge(const std::vector<Edge>& edges, std::size_t s, std::size_t t) {
  return std::lower_bound(edges.begin(), edges.end(), std::pair{s, t}, [](const Edge& e, const auto& key) {
    return std::pair{e.source, e.target} < key;
  });
}

}  // namespace

std::uint64_t JourneyNetwork::weight(std::string_view origin, std::string_view destination) const {
  const auto s = index_of(origin);
  const auto t = index_of(destination);
  if (!s || !t) return 0;
  auto it = find_edge(edges_, *s, *t);
  return (it != edges_.end() && it->source == *s && it->target == *t) ? it->weight : 0;
}

bool JourneyNetwork::has_edge(std::size_t source, std::size_t target) const {
  auto it = find_edge(edges_, source, target);
  return it != edges_.end() && it->source == source && it->target == target;
}

std::uint64_t JourneyNetwork::total_weight() const noexcept {
  std::uint64_t w = 0;
  for (const auto& e : edges_) w += e.weight;
  return w;
}

std::uint64_t JourneyNetwork::self_loop_weight() const noexcept {
  std::uint64_t w = 0;
  for (const auto& e : edges_) {
    if (e.is_self_loop()) w += e.weight;
  }
  return w;
}

std::size_t JourneyNetwork::self_loop_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_self_loop(); }));
}

JourneyNetwork JourneyNetwork::reversed() const {
  std::vector<Edge> flipped;
  flipped.reserve(edges_.size());
  for (const auto& e : edges_) flipped.push_back({e.target, e.source, e.weight});
  return JourneyNetwork(nodes_, std::move(flipped), period_);
}

std::vector<std::uint8_t> JourneyNetwork::adjacency() const {
  const std::size_t n = nodes_.size();
  std::vector<std::uint8_t> a(n * n, 0);
  for (const auto& e : edges_) a[e.source * n + e.target] = 1;
  return a;
}

JourneyNetwork build_network(std::span<const JourneyEvent> events, const BuildOptions& opts) {
  std::set<std::string> node_set(opts.extra_nodes.begin(), opts.extra_nodes.end());
  std::map<std::pair<std::string, std::string>, std::uint64_t> tally;
  for (const auto& ev : events) {
    if (opts.period && ev.period != *opts.period) continue;
    if (opts.known_regions) {
      for (const auto* id : {&ev.origin, &ev.destination}) {
        if (!opts.known_regions->contains(*id)) {
          throw Error(ErrorKind::UnknownRegion, "event references unknown region '" + *id + "'");
        }
      }
    }
    if (ev.count == 0) throw Error(ErrorKind::InvalidArgument, "event count must be positive");
    tally[{ev.origin, ev.destination}] += ev.count;
    node_set.insert(ev.origin);
    node_set.insert(ev.destination);
  }
  std::vector<std::string> nodes(node_set.begin(), node_set.end());
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], i);
  std::vector<Edge> edges;
  edges.reserve(tally.size());
  for (const auto& [key, w] : tally) edges.push_back({index.at(key.first), index.at(key.second), w});
  return JourneyNetwork(std::move(nodes), std::move(edges), opts.period);
}

JourneyNetwork remove_self_loops(const JourneyNetwork& net) {
  std::vector<bool> keep(net.node_count(), false);
  for (const auto& e : net.edges()) {
    if (!e.is_self_loop()) keep[e.source] = keep[e.target] = true;
  }
  std::vector<std::size_t> remap(net.node_count());
  std::vector<std::string> nodes;
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    if (keep[i]) {
      remap[i] = nodes.size();
      nodes.push_back(net.nodes()[i]);
    }
  }
  std::vector<Edge> edges;
  for (const auto& e : net.edges()) {
    if (!e.is_self_loop()) edges.push_back({remap[e.source], remap[e.target], e.weight});
  }
  return JourneyNetwork(std::move(nodes), std::move(edges), net.period());
}

std::string_view to_string(DegreeKind kind) noexcept {
  switch (kind) {
    case DegreeKind::WeightedIn: return "weighted_in";
    case DegreeKind::WeightedOut: return "weighted_out";
    case DegreeKind::UnweightedIn: return "unweighted_in";
    case DegreeKind::UnweightedOut: return "unweighted_out";
  }
  return "unknown";
}

DegreeVector degree_vector(const JourneyNetwork& net, DegreeKind kind, bool include_self_loops) {
  DegreeVector dv{kind, include_self_loops, std::vector<double>(net.node_count(), 0.0)};
  const bool weighted = kind == DegreeKind::WeightedIn || kind == DegreeKind::WeightedOut;
  const bool incoming = kind == DegreeKind::WeightedIn || kind == DegreeKind::UnweightedIn;
  for (const auto& e : net.edges()) {
    if (e.is_self_loop() && !include_self_loops) continue;
    const std::size_t node = incoming ? e.target : e.source;
    dv.values[node] += weighted ? static_cast<double>(e.weight) : 1.0;
  }
  return dv;
}

double reciprocity(const JourneyNetwork& net, const ReciprocityOptions& opts) {
  std::size_t total = 0;
  std::size_t mutual = 0;
  for (const auto& e : net.edges()) {
    if (e.is_self_loop() && !opts.include_self_loops) continue;
    ++total;
    if (net.has_edge(e.target, e.source)) ++mutual;
  }
  if (total == 0) throw Error(ErrorKind::EmptyNetwork, "reciprocity needs at least one edge");
  return static_cast<double>(mutual) / static_cast<double>(total);
}

HitsScores hits(const JourneyNetwork& net, const HitsOptions& opts) {
  std::vector<std::pair<std::size_t, std::size_t>> links;
  for (const auto& e : net.edges()) {
    if (!e.is_self_loop()) links.emplace_back(e.source, e.target);
  }
  if (links.empty()) throw Error(ErrorKind::EmptyNetwork, "HITS needs at least one non-loop edge");

  const std::size_t n = net.node_count();
  HitsScores out;
  out.nodes = net.nodes();
  out.hub.assign(n, 1.0);
  out.authority.assign(n, 1.0);

  auto normalize = [](std::vector<double>& v) {
    double ss = 0.0;
    for (double x : v) ss += x * x;
    const double norm = std::sqrt(ss);
    if (norm > 0.0) {
      for (double& x : v) x /= norm;
    }
  };

  std::vector<double> hub(n), auth(n);
  for (int it = 1; it <= opts.max_iter; ++it) {
    std::fill(hub.begin(), hub.end(), 0.0);
    for (const auto& [s, t] : links) hub[s] += out.authority[t];
    normalize(hub);
    std::fill(auth.begin(), auth.end(), 0.0);
    for (const auto& [s, t] : links) auth[t] += hub[s];
    normalize(auth);

    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      change = std::max({change, std::abs(hub[i] - out.hub[i]), std::abs(auth[i] - out.authority[i])});
    }
    out.hub.swap(hub);
    out.authority.swap(auth);
    out.iterations = it;
    if (change < opts.tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

BasicStats summary_stats(const JourneyNetwork& net, const std::vector<RegionPair>* adjacency) {
  BasicStats s;
  s.empty = net.empty();
  if (s.empty) return s;

  s.nodes = net.node_count();
  s.edges = net.edge_count();
  s.self_loop_edges = net.self_loop_count();
  s.total_weight = net.total_weight();
  s.self_loop_weight = net.self_loop_weight();
  s.self_loop_share =
      s.total_weight > 0 ? static_cast<double>(s.self_loop_weight) / static_cast<double>(s.total_weight) : 0.0;

  const auto max_of = [](const DegreeVector& d) {
    return d.values.empty() ? 0.0 : *std::max_element(d.values.begin(), d.values.end());
  };
  const auto win = degree_vector(net, DegreeKind::WeightedIn, true);
  const auto wout = degree_vector(net, DegreeKind::WeightedOut, true);
  const auto uin = degree_vector(net, DegreeKind::UnweightedIn, true);
  const auto uout = degree_vector(net, DegreeKind::UnweightedOut, true);
  const double n = static_cast<double>(s.nodes);
  s.max_weighted_in = max_of(win);
  s.max_weighted_out = max_of(wout);
  s.mean_weighted_degree = static_cast<double>(s.total_weight) / n;
  s.max_unweighted_in = max_of(uin);
  s.max_unweighted_out = max_of(uout);
  s.mean_unweighted_degree = static_cast<double>(s.edges) / n;
  if (s.edges > 0) s.reciprocity = reciprocity(net);

  if (adjacency) {
    std::set<std::pair<std::string, std::string>> touching;
    for (const auto& [a, b] : *adjacency) {
      touching.emplace(a, b);
      touching.emplace(b, a);
    }
    std::uint64_t discordant = 0, adjacent = 0;
    for (const auto& e : net.edges()) {
      if (e.is_self_loop()) continue;
      discordant += e.weight;
      if (touching.contains({net.nodes()[e.source], net.nodes()[e.target]})) adjacent += e.weight;
    }
    if (discordant > 0) s.adjacent_discordant_share = static_cast<double>(adjacent) / static_cast<double>(discordant);
  }
  return s;
}

}  // namespace journeynet
