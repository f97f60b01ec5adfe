#include "journeynet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "journeynet/error.hpp"

namespace journeynet {

RegressionFit loglog_fit(std::span<const double> x, std::span<const double> y, bool shift_x) {
  if (x.size() != y.size()) throw Error(ErrorKind::InvalidArgument, "x and y must have equal length");
  if (x.size() < 3) throw Error(ErrorKind::TooFewPoints, "log-log fit needs at least three points");
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = shift_x ? x[i] + 1.0 : x[i];
    if (!(xi > 0.0)) throw Error(ErrorKind::InvalidArgument, "log-log fit needs positive x");
    if (!(y[i] >= 0.0)) throw Error(ErrorKind::InvalidArgument, "log-log fit needs non-negative y");
    lx[i] = std::log(xi);
    ly[i] = std::log(y[i] + 1.0);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx <= 0.0) throw Error(ErrorKind::InvalidArgument, "log-log fit needs at least two distinct x values");

  RegressionFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.residuals.resize(n);
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    fit.residuals[i] = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss_res += fit.residuals[i] * fit.residuals[i];
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 0.0;
  fit.residual_std = std::sqrt(ss_res / static_cast<double>(n));
  fit.outlier.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    fit.outlier[i] = fit.residual_std > 0.0 && std::abs(fit.residuals[i]) > 3.0 * fit.residual_std;
  }
  return fit;
}

PerCapita per_capita_metrics(const JourneyNetwork& net, const AttributeMap& attrs, bool include_self_loops) {
  const auto win = degree_vector(net, DegreeKind::WeightedIn, include_self_loops);
  const auto wout = degree_vector(net, DegreeKind::WeightedOut, include_self_loops);
  PerCapita pc;
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    const auto& id = net.nodes()[i];
    auto it = attrs.find(id);
    if (it == attrs.end()) throw Error(ErrorKind::MissingAttributes, "no attributes for region '" + id + "'");
    if (it->second.population == 0) {
      pc.skipped.push_back(id);
      continue;
    }
    const double pop = static_cast<double>(it->second.population);
    pc.regions.push_back(id);
    pc.ipc.push_back(win.values[i] / pop);
    pc.opc.push_back(wout.values[i] / pop);
  }
  return pc;
}

std::optional<std::size_t> kneedle_elbow(std::span<const double> sorted_desc, double sensitivity) {
  const std::size_t n = sorted_desc.size();
  if (n < 3) throw Error(ErrorKind::TooFewPoints, "Kneedle needs at least three values");
  const auto [lo_it, hi_it] = std::minmax_element(sorted_desc.begin(), sorted_desc.end());
  const double range = *hi_it - *lo_it;
  if (!(range > 0.0)) return std::nullopt;

  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xn = static_cast<double>(i) / static_cast<double>(n - 1);
    const double yn = (sorted_desc[i] - *lo_it) / range;
    diff[i] = (1.0 - yn) - xn;
  }
  const auto [dmin, dmax] = std::minmax_element(diff.begin(), diff.end());
  if (*dmax - *dmin < 1e-12) return std::nullopt;

  std::vector<bool> is_max(n, false), is_min(n, false);
  std::optional<std::size_t> first_max;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    is_max[i] = diff[i] >= diff[i - 1] && diff[i] >= diff[i + 1];
    is_min[i] = diff[i] <= diff[i - 1] && diff[i] <= diff[i + 1];
    if (is_max[i] && !first_max) first_max = i;
  }
  if (!first_max) return std::nullopt;

  const double step = 1.0 / static_cast<double>(n - 1);
  double threshold = 0.0;
  std::size_t threshold_index = *first_max;
  for (std::size_t i = *first_max; i + 1 < n; ++i) {
    if (is_max[i]) {
      threshold = diff[i] - sensitivity * step;
      threshold_index = i;
    }
    if (is_min[i]) threshold = 0.0;
    if (diff[i + 1] < threshold) return threshold_index;
  }
  return std::nullopt;
}

std::string_view to_string(Metric m) noexcept {
  switch (m) {
    case Metric::IPC: return "ipc";
    case Metric::OPC: return "opc";
    case Metric::Authority: return "authority";
    case Metric::Hub: return "hub";
  }
  return "unknown";
}

TopKSelection top_k(Metric metric, std::span<const std::string> ids, std::span<const double> values, std::size_t k) {
  if (ids.size() != values.size()) throw Error(ErrorKind::InvalidArgument, "ids and values must align");
  if (k > ids.size()) {
    throw Error(ErrorKind::KTooLarge,
                "k = " + std::to_string(k) + " exceeds " + std::to_string(ids.size()) + " scored regions");
  }
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return ids[a] < ids[b];
  });
  TopKSelection sel;
  sel.metric = metric;
  sel.k = k;
  for (std::size_t r = 0; r < k; ++r) {
    sel.members.push_back(ids[order[r]]);
    sel.values.push_back(values[order[r]]);
  }
  if (ids.size() >= 3) {
    std::vector<double> sorted;
    sorted.reserve(order.size());
    for (auto i : order) sorted.push_back(values[i]);
    if (auto knee = kneedle_elbow(sorted)) sel.elbow_k = *knee + 1;
  }
  return sel;
}

std::vector<TopKSelection> standard_selections(const JourneyNetwork& net, const AttributeMap& attrs, std::size_t k) {
  const auto loop_free = remove_self_loops(net);
  const auto pc = per_capita_metrics(loop_free, attrs, false);
  const auto scores = hits(loop_free);
  std::vector<TopKSelection> out;
  out.push_back(top_k(Metric::IPC, pc.regions, pc.ipc, std::min(k, pc.regions.size())));
  out.push_back(top_k(Metric::OPC, pc.regions, pc.opc, std::min(k, pc.regions.size())));
  out.push_back(top_k(Metric::Authority, scores.nodes, scores.authority, std::min(k, scores.nodes.size())));
  out.push_back(top_k(Metric::Hub, scores.nodes, scores.hub, std::min(k, scores.nodes.size())));
  return out;
}

namespace {

std::string group_name(const TopKSelection& sel) { return "top_" + std::string(to_string(sel.metric)); }

const RegionAttributes& attributes_of(const AttributeMap& attrs, const std::string& id) {
  auto it = attrs.find(id);
  if (it == attrs.end()) throw Error(ErrorKind::MissingAttributes, "no attributes for region '" + id + "'");
  return it->second;
}

// Two-row contingency test with empty columns removed; a table that collapses
// below two columns has nothing to test.
TestResult two_row_g_test(std::vector<double> row_a, std::vector<double> row_b, const std::string& method,
                          const std::string& label) {
  ContingencyTable table(2);
  for (std::size_t j = 0; j < row_a.size(); ++j) {
    if (row_a[j] + row_b[j] > 0.0) {
      table[0].push_back(row_a[j]);
      table[1].push_back(row_b[j]);
    }
  }
  TestResult r;
  const double sa = std::accumulate(table[0].begin(), table[0].end(), 0.0);
  const double sb = std::accumulate(table[1].begin(), table[1].end(), 0.0);
  if (table[0].size() < 2 || sa <= 0.0 || sb <= 0.0) {
    r.method = "g_test";
    r.p_value = 1.0;
    r.notes = "degenerate table, not tested";
  } else {
    r = g_test(table);
  }
  r.method = method;
  r.label = label;
  return r;
}

}  // namespace

ProfileReport profile_groups(std::span<const TopKSelection> selections, const AttributeMap& attrs,
                             std::span<const std::string> universe, const ProfileOptions& opts) {
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
  std::set<std::string> selected;
  for (const auto& sel : selections) {
    groups.emplace_back(group_name(sel), sel.members);
    selected.insert(sel.members.begin(), sel.members.end());
  }
  std::vector<std::string> other;
  for (const auto& id : universe) {
    if (!selected.contains(id)) other.push_back(id);
  }
  groups.emplace_back("other", std::move(other));

  std::set<std::string> categories;
  for (const auto& id : universe) {
    for (const auto& [cat, share] : attributes_of(attrs, id).demographics) categories.insert(cat);
  }

  ProfileReport report;
  std::vector<std::vector<double>> populations;
  struct Counts {
    std::vector<double> race, employed, poverty, collapsed, six;
  };
  std::vector<Counts> counts;
  for (const auto& [name, members] : groups) {
    GroupProfile g;
    g.name = name;
    g.members = members;
    Counts c{std::vector<double>(categories.size(), 0.0), {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0},
             std::vector<double>(6, 0.0)};
    std::vector<double> pops;
    for (const auto& id : members) {
      const auto& a = attributes_of(attrs, id);
      const double pop = static_cast<double>(a.population);
      const double unit = opts.basis == CountBasis::People ? pop : 1.0;
      pops.push_back(pop);
      g.mean_population += pop;
      const std::size_t cls = static_cast<std::size_t>(a.urbanicity) - 1;
      g.urbanicity_share[cls] += 1.0;
      c.six[cls] += 1.0;
      c.collapsed[is_urban(a.urbanicity) ? 0 : 1] += 1.0;
      std::size_t col = 0;
      for (const auto& cat : categories) {
        auto it = a.demographics.find(cat);
        const double share = it == a.demographics.end() ? 0.0 : it->second;
        g.demographic_means[cat] += share;
        c.race[col++] += share * unit;
      }
      g.employed_mean += a.employed;
      g.poverty_mean += a.poverty;
      c.employed[0] += a.employed * unit;
      c.employed[1] += (1.0 - a.employed) * unit;
      c.poverty[0] += a.poverty * unit;
      c.poverty[1] += (1.0 - a.poverty) * unit;
    }
    const double m = static_cast<double>(members.size());
    if (m > 0) {
      g.mean_population /= m;
      for (auto& s : g.urbanicity_share) s /= m;
      for (auto& [cat, v] : g.demographic_means) v /= m;
      g.employed_mean /= m;
      g.poverty_mean /= m;
    }
    for (Urbanicity u : kAllUrbanicity) {
      const double share = g.urbanicity_share[static_cast<std::size_t>(u) - 1];
      (is_urban(u) ? g.urban_share : g.rural_share) += share;
    }
    report.groups.push_back(std::move(g));
    populations.push_back(std::move(pops));
    counts.push_back(std::move(c));
  }

  // Tukey needs two values per group; smaller groups sit out with a note.
  std::vector<std::size_t> eligible;
  std::vector<std::vector<double>> eligible_pops;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (populations[i].size() >= 2) {
      eligible.push_back(i);
      eligible_pops.push_back(populations[i]);
    } else {
      report.notes.push_back("group " + groups[i].first + " has fewer than two members, left out of Tukey HSD");
    }
  }
  if (eligible.size() >= 2) report.population_tests = tukey_hsd(eligible_pops);
  for (auto& r : report.population_tests) {
    const auto dash = r.label.find('-');
    const auto i = eligible[std::stoul(r.label.substr(0, dash))];
    const auto j = eligible[std::stoul(r.label.substr(dash + 1))];
    r.label = groups[i].first + " vs " + groups[j].first;
    r.alpha = opts.alpha;
  }

  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      const std::string label = groups[i].first + " vs " + groups[j].first;
      report.socioeconomic_tests.push_back(two_row_g_test(counts[i].race, counts[j].race, "g_test_race", label));
      report.socioeconomic_tests.push_back(
          two_row_g_test(counts[i].employed, counts[j].employed, "g_test_employed", label));
      report.socioeconomic_tests.push_back(
          two_row_g_test(counts[i].poverty, counts[j].poverty, "g_test_poverty", label));
      report.urbanicity_tests.push_back(
          two_row_g_test(counts[i].collapsed, counts[j].collapsed, "g_test_urban_rural", label));
      report.urbanicity_tests.push_back(
          two_row_g_test(counts[i].six, counts[j].six, "g_test_urbanicity_six_class", label));
    }
  }
  apply_holm(report.socioeconomic_tests, opts.alpha, opts.socioeconomic_family);
  apply_holm(report.urbanicity_tests, opts.alpha, opts.urbanicity_family);
  return report;
}

CensoredSample group_sample(const JourneyNetwork& net, const TopKSelection& selection, const IntervalTable& intervals) {
  const std::set<std::string> members(selection.members.begin(), selection.members.end());
  const bool incoming = is_import_metric(selection.metric);
  CensoredSample sample;
  for (const auto& e : net.edges()) {
    if (e.is_self_loop()) continue;
    const auto& a = net.nodes()[e.source];
    const auto& b = net.nodes()[e.target];
    if (!members.contains(incoming ? b : a)) continue;
    auto it = intervals.find({a, b});
    if (it == intervals.end()) it = intervals.find({b, a});
    if (it == intervals.end()) {
      throw Error(ErrorKind::MissingInterval, "no distance interval for pair (" + a + ", " + b + ")");
    }
    sample.push_back({it->second, static_cast<double>(e.weight)});
  }
  return sample;
}

std::vector<RegionPair> discordant_pairs(const JourneyNetwork& net) {
  std::vector<RegionPair> pairs;
  for (const auto& e : net.edges()) {
    if (!e.is_self_loop()) pairs.emplace_back(net.nodes()[e.source], net.nodes()[e.target]);
  }
  return pairs;
}

DistanceReport journey_distance_by_group(const JourneyNetwork& net, std::span<const TopKSelection> selections,
                                         const IntervalTable& intervals, const DistanceOptions& opts) {
  DistanceReport report;
  auto add_group = [&](std::string name, const CensoredSample& sample) {
    if (sample.empty()) throw Error(ErrorKind::EmptySample, "group '" + name + "' has no discordant journeys");
    GroupDistance g;
    g.name = std::move(name);
    g.journeys = sample.size();
    g.dist = turnbull_fit(sample, opts.fit);
    g.summary = summarize(g.dist);
    report.groups.push_back(std::move(g));
  };
  add_group("all", discordant_sample(net, intervals));
  for (const auto& sel : selections) add_group(group_name(sel), group_sample(net, sel, intervals));

  std::uint64_t pair_index = 0;
  for (std::size_t i = 0; i < report.groups.size(); ++i) {
    for (std::size_t j = i + 1; j < report.groups.size(); ++j, ++pair_index) {
      const auto& a = report.groups[i];
      const auto& b = report.groups[j];
      const std::string label = a.name + " vs " + b.name;
      McUOptions mc = opts.mc;
      mc.seed = derive_seed(opts.mc.seed, pair_index);
      auto u = mc_u_test(a.dist, b.dist, mc);
      u.label = label;
      report.u_tests.push_back(std::move(u));
      auto z = z_test_means(a.summary, b.summary);
      z.label = label;
      report.z_tests.push_back(std::move(z));
    }
  }
  apply_holm(report.u_tests, opts.alpha, opts.family_size);
  apply_holm(report.z_tests, opts.alpha, opts.family_size);
  return report;
}

DegreeFits degree_fits(const JourneyNetwork& net, const AttributeMap& attrs) {
  const auto loop_free = remove_self_loops(net);
  const auto win = degree_vector(loop_free, DegreeKind::WeightedIn, false);
  const auto wout = degree_vector(loop_free, DegreeKind::WeightedOut, false);
  std::vector<double> in, out, pop;
  DegreeFits fits;
  for (std::size_t i = 0; i < loop_free.node_count(); ++i) {
    const auto& id = loop_free.nodes()[i];
    auto it = attrs.find(id);
    if (it == attrs.end() || it->second.population == 0) continue;
    fits.regions.push_back(id);
    in.push_back(win.values[i]);
    out.push_back(wout.values[i]);
    pop.push_back(static_cast<double>(it->second.population));
  }
  fits.out_vs_in = loglog_fit(in, out, true);
  fits.out_vs_pop = loglog_fit(pop, out);
  fits.in_vs_pop = loglog_fit(pop, in);
  return fits;
}

namespace {

std::set<std::pair<std::string, std::string>> edge_set(const JourneyNetwork& net) {
  std::set<std::pair<std::string, std::string>> s;
  for (const auto& e : net.edges()) s.emplace(net.nodes()[e.source], net.nodes()[e.target]);
  return s;
}

double member_mean(const TemporalCorr& corr, const std::vector<std::string>& members) {
  const std::set<std::string> m(members.begin(), members.end());
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < corr.nodes.size(); ++i) {
    if (corr.defined[i] && m.contains(corr.nodes[i])) {
      sum += corr.values[i];
      ++count;
    }
  }
  return count > 0 ? sum / static_cast<double>(count) : 0.0;
}

}  // namespace

SweepReport sensitivity_sweep(std::span<const JourneyEvent> events, const AttributeMap& attrs,
                              const CoverageTable& coverage, const BoundaryMap& boundaries,
                              const SweepOptions& opts) {
  std::set<std::string> candidates;
  for (const auto& ev : events) {
    candidates.insert(ev.origin);
    candidates.insert(ev.destination);
  }

  struct Filtered {
    double beta;
    std::set<std::string> kept;
    std::vector<JourneyEvent> events;
    JourneyNetwork net;
  };
  std::vector<Filtered> runs;
  std::vector<RegionPair> pairs;
  for (double beta : opts.betas) {
    Filtered f;
    f.beta = beta;
    f.kept = regions_meeting_coverage(coverage, candidates, beta);
    for (const auto& ev : events) {
      if (f.kept.contains(ev.origin) && f.kept.contains(ev.destination)) f.events.push_back(ev);
    }
    f.net = build_network(f.events);
    const auto p = discordant_pairs(f.net);
    if (p.empty()) {
      throw Error(ErrorKind::EmptyAfterFilter,
                  "no discordant journeys remain at coverage threshold " + std::to_string(beta));
    }
    pairs.insert(pairs.end(), p.begin(), p.end());
    runs.push_back(std::move(f));
  }
  const auto intervals = interval_table(boundaries, pairs, opts.bounds);

  SweepReport report;
  for (const auto& f : runs) {
    SweepEntry entry;
    entry.beta = f.beta;
    entry.retained.assign(f.kept.begin(), f.kept.end());
    std::set_difference(candidates.begin(), candidates.end(), f.kept.begin(), f.kept.end(),
                        std::back_inserter(entry.removed));
    entry.nodes = f.net.node_count();
    entry.edges = f.net.edge_count();
    entry.fits = degree_fits(f.net, attrs);
    entry.selections = standard_selections(f.net, attrs, opts.k);
    entry.distances = journey_distance_by_group(f.net, entry.selections, intervals, opts.distance);

    const auto series = slice_series(f.events, opts.window_length, false);
    if (series.size() >= 2) {
      const auto und = temporal_correlation(series, TemporalDirection::Undirected);
      const auto in = temporal_correlation(series, TemporalDirection::In);
      const auto out = temporal_correlation(series, TemporalDirection::Out);
      entry.persistence.push_back({"all", und.overall, in.overall, out.overall});
      for (const auto& sel : entry.selections) {
        entry.persistence.push_back({group_name(sel), member_mean(und, sel.members), member_mean(in, sel.members),
                                     member_mean(out, sel.members)});
      }
    }
    report.entries.push_back(std::move(entry));
  }

  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (std::size_t j = 0; j < runs.size(); ++j) {
      if (!(runs[i].beta > runs[j].beta)) continue;
      const auto& hi = runs[i].net;
      const auto& lo = runs[j].net;
      const std::set<std::string> lo_nodes(lo.nodes().begin(), lo.nodes().end());
      const bool nodes_ok = std::all_of(hi.nodes().begin(), hi.nodes().end(),
                                        [&](const std::string& id) { return lo_nodes.contains(id); });
      const auto lo_edges = edge_set(lo);
      const auto hi_edges = edge_set(hi);
      const bool edges_ok = std::includes(lo_edges.begin(), lo_edges.end(), hi_edges.begin(), hi_edges.end());
      if (!nodes_ok || !edges_ok) {
        report.subgraph_property = false;
        report.violations.push_back("beta " + std::to_string(runs[i].beta) + " is not a subgraph of beta " +
                                    std::to_string(runs[j].beta));
      }
    }
  }
  return report;
}

}  // namespace journeynet
