#include "journeynet/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "journeynet/error.hpp"

namespace journeynet {
namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

using NeighbourSets = std::vector<std::vector<std::size_t>>;

// Neighbour sets per universe node for one snapshot in the requested direction.
NeighbourSets neighbours(const JourneyNetwork& net, const std::vector<std::size_t>& to_universe,
                         std::size_t universe_size, TemporalDirection dir, bool self_loops) {
  NeighbourSets sets(universe_size);
  for (const auto& e : net.edges()) {
    if (e.is_self_loop() && !self_loops) continue;
    const std::size_t s = to_universe[e.source];
    const std::size_t t = to_universe[e.target];
    switch (dir) {
      case TemporalDirection::Out: sets[s].push_back(t); break;
      case TemporalDirection::In: sets[t].push_back(s); break;
      case TemporalDirection::Undirected:
        sets[s].push_back(t);
        sets[t].push_back(s);
        break;
    }
  }
  for (auto& v : sets) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return sets;
}

std::size_t overlap(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace

std::string_view to_string(TemporalDirection d) noexcept {
  switch (d) {
    case TemporalDirection::Undirected: return "undirected";
    case TemporalDirection::In: return "in";
    case TemporalDirection::Out: return "out";
  }
  return "unknown";
}

NetworkSeries slice_series(std::span<const JourneyEvent> events, int window_length, bool self_loops) {
  if (window_length < 1) throw Error(ErrorKind::InvalidArgument, "window length must be >= 1");
  if (events.empty()) throw Error(ErrorKind::InvalidArgument, "slice_series needs at least one event");

  int first = floor_div(events.front().period, window_length);
  int last = first;
  for (const auto& ev : events) {
    const int w = floor_div(ev.period, window_length);
    first = std::min(first, w);
    last = std::max(last, w);
  }
  const auto count = static_cast<std::size_t>(last - first + 1);
  std::vector<std::vector<JourneyEvent>> buckets(count);
  std::set<std::string> universe;
  for (const auto& ev : events) {
    universe.insert(ev.origin);
    universe.insert(ev.destination);
    if (!self_loops && ev.origin == ev.destination) continue;
    JourneyEvent copy = ev;
    copy.period = floor_div(ev.period, window_length);
    buckets[static_cast<std::size_t>(copy.period - first)].push_back(std::move(copy));
  }

  NetworkSeries series;
  series.universe.assign(universe.begin(), universe.end());
  series.window_length = window_length;
  for (std::size_t k = 0; k < count; ++k) {
    const int w = first + static_cast<int>(k);
    BuildOptions opts;
    opts.period = w;
    series.window_index.push_back(w);
    series.windows.push_back(build_network(buckets[k], opts));
  }
  return series;
}

NetworkSeries make_series(std::vector<JourneyNetwork> windows) {
  std::set<std::string> universe;
  for (const auto& w : windows) universe.insert(w.nodes().begin(), w.nodes().end());
  NetworkSeries s;
  s.universe.assign(universe.begin(), universe.end());
  for (std::size_t k = 0; k < windows.size(); ++k) s.window_index.push_back(static_cast<int>(k));
  s.windows = std::move(windows);
  return s;
}

TemporalCorr temporal_correlation(const NetworkSeries& series, TemporalDirection direction,
                                  const TemporalOptions& opts) {
  const std::size_t T = series.size();
  if (T < 2) throw Error(ErrorKind::TooFewWindows, "temporal correlation needs at least two windows");

  const std::size_t n = series.universe.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(series.universe[i], i);

  std::vector<NeighbourSets> snaps;
  snaps.reserve(T);
  for (const auto& net : series.windows) {
    std::vector<std::size_t> to_universe;
    to_universe.reserve(net.node_count());
    for (const auto& id : net.nodes()) {
      auto it = index.find(id);
      if (it == index.end()) throw Error(ErrorKind::InvalidArgument, "snapshot node outside series universe");
      to_universe.push_back(it->second);
    }
    snaps.push_back(neighbours(net, to_universe, n, direction, opts.include_self_loops));
  }

  TemporalCorr out;
  out.direction = direction;
  out.nodes = series.universe;
  out.values.assign(n, 0.0);
  out.defined.assign(n, false);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    std::size_t terms = 0;
    for (std::size_t t = 0; t + 1 < T; ++t) {
      const auto& a = snaps[t][i];
      const auto& b = snaps[t + 1][i];
      if (a.empty() || b.empty()) continue;
      sum += static_cast<double>(overlap(a, b)) /
             std::sqrt(static_cast<double>(a.size()) * static_cast<double>(b.size()));
      ++terms;
    }
    if (terms == 0) continue;
    out.defined[i] = true;
    const double denom = opts.undefined == UndefinedTerm::CountAsZero ? static_cast<double>(T - 1)
                                                                       : static_cast<double>(terms);
    out.values[i] = sum / denom;
    total += out.values[i];
    ++out.defined_count;
  }
  out.overall = out.defined_count > 0 ? total / static_cast<double>(out.defined_count) : 0.0;
  return out;
}

CensoredSample discordant_sample(const JourneyNetwork& net, const IntervalTable& intervals) {
  CensoredSample sample;
  for (const auto& e : net.edges()) {
    if (e.is_self_loop()) continue;
    const auto& a = net.nodes()[e.source];
    const auto& b = net.nodes()[e.target];
    auto it = intervals.find({a, b});
    if (it == intervals.end()) it = intervals.find({b, a});
    if (it == intervals.end()) {
      throw Error(ErrorKind::MissingInterval, "no distance interval for pair (" + a + ", " + b + ")");
    }
    sample.push_back({it->second, static_cast<double>(e.weight)});
  }
  return sample;
}

std::vector<WindowSummary> series_summaries(const NetworkSeries& series, const IntervalTable& intervals,
                                            const TurnbullOptions& fit) {
  std::vector<WindowSummary> out;
  out.reserve(series.size());
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& net = series.windows[k];
    WindowSummary w;
    w.window = series.window_index[k];
    w.total_weight = net.total_weight();
    w.discordant_weight = w.total_weight - net.self_loop_weight();
    if (w.total_weight > 0) {
      w.self_loop_share = static_cast<double>(net.self_loop_weight()) / static_cast<double>(w.total_weight);
    }
    const auto sample = discordant_sample(net, intervals);
    if (!sample.empty()) {
      const auto summary = summarize(turnbull_fit(sample, fit));
      w.mean_km = summary.mean;
      w.median_km = summary.median;
    }
    out.push_back(w);
  }
  return out;
}

}  // namespace journeynet
