#include "journeynet/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "journeynet/analysis.hpp"
#include "journeynet/csv.hpp"
#include "journeynet/error.hpp"
#include "journeynet/ingest.hpp"
#include "journeynet/report.hpp"
#include "journeynet/synth.hpp"

#ifndef JOURNEYNET_VERSION
#define JOURNEYNET_VERSION "unknown"
#endif

namespace journeynet::cli {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  std::string events;
  std::string boundaries;
  std::string attributes;
  std::string coverage;
  double beta = 0.75;
  int window = 1;
  std::size_t k = 10;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out = ".";
  bool plots = false;
  std::vector<double> betas{0.55, 0.65, 0.75, 0.85};
  std::size_t reps = 100;
  std::size_t n_per_rep = 500;
  double alpha = 0.05;
  std::size_t family_size = 0;
  bool fips = false;
  synth::GeneratorConfig gen;
  std::vector<std::string> dips;
};

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json optional_number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

json config_json(const RunConfig& c) {
  json j;
  j["events"] = c.events;
  j["boundaries"] = c.boundaries;
  j["attributes"] = c.attributes;
  j["coverage"] = c.coverage;
  j["beta"] = c.beta;
  j["window"] = c.window;
  j["k"] = c.k;
  j["seed"] = c.seed_given ? json(c.seed) : json(nullptr);
  j["out"] = c.out;
  j["plots"] = c.plots;
  j["betas"] = c.betas;
  j["reps"] = c.reps;
  j["n_per_rep"] = c.n_per_rep;
  j["alpha"] = c.alpha;
  j["family_size"] = c.family_size;
  j["fips"] = c.fips;
  if (c.subcommand == "synth") {
    const auto& g = c.gen;
    j["generator"] = {{"rows", g.rows},
                      {"cols", g.cols},
                      {"origin_lat", g.origin_lat},
                      {"origin_lon", g.origin_lon},
                      {"cell_deg", g.cell_deg},
                      {"population_min", g.population_min},
                      {"population_alpha", g.population_alpha},
                      {"a", g.a},
                      {"b", g.b},
                      {"lambda_km", g.lambda_km},
                      {"self_loop_prob", g.self_loop_prob},
                      {"windows", g.windows},
                      {"periods_per_window", g.periods_per_window},
                      {"events_per_window", g.events_per_window},
                      {"persistence", g.persistence},
                      {"attractors", g.attractors},
                      {"attractor_boost", g.attractor_boost},
                      {"attractor_lambda_scale", g.attractor_lambda_scale},
                      {"coverage_base", g.coverage_base},
                      {"dips", c.dips}};
  }
  return j;
}

json meta_json(const RunConfig& c) {
  return {{"tool", "journeynet"}, {"version", JOURNEYNET_VERSION}, {"subcommand", c.subcommand},
          {"config", config_json(c)}};
}

class Output {
 public:
  Output(const RunConfig& config, std::ostream& log) : config_(config), log_(log), dir_(config.out) {
    fs::create_directories(dir_);
  }

  void json_file(const std::string& name, json body) const {
    json doc;
    doc["meta"] = meta_json(config_);
    for (auto& [key, value] : body.items()) doc[key] = std::move(value);
    write(name, doc.dump(2) + "\n");
  }

  /// CSV with a "# {metadata}" first line; ingest readers skip it.
  void csv_file(const std::string& name, const std::string& body) const {
    write(name, "# " + meta_json(config_).dump() + "\n" + body);
  }

  void svg_file(const std::string& name, const std::string& body) const { write(name, body); }

 private:
  void write(const std::string& name, const std::string& content) const {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    out << content;
    if (!out) throw Error(ErrorKind::InvalidArgument, "write failed for " + path.string());
    log_ << "wrote " << path.string() << "\n";
  }

  const RunConfig& config_;
  std::ostream& log_;
  fs::path dir_;
};

json test_json(const TestResult& t) {
  json j;
  j["method"] = t.method;
  j["label"] = t.label;
  j["statistic"] = number(t.statistic);
  j["p_value"] = number(t.p_value);
  j["corrected_p"] = optional_number(t.corrected_p);
  j["n_comparisons"] = t.n_comparisons ? json(*t.n_comparisons) : json(nullptr);
  j["alpha"] = optional_number(t.alpha);
  j["stars"] = significance_stars(t.corrected_p.value_or(t.p_value));
  j["notes"] = t.notes;
  return j;
}

json tests_json(const std::vector<TestResult>& tests) {
  json arr = json::array();
  for (const auto& t : tests) arr.push_back(test_json(t));
  return arr;
}

json stats_json(const BasicStats& s) {
  return {{"empty", s.empty},
          {"nodes", s.nodes},
          {"edges", s.edges},
          {"self_loop_edges", s.self_loop_edges},
          {"total_weight", s.total_weight},
          {"self_loop_weight", s.self_loop_weight},
          {"self_loop_share", number(s.self_loop_share)},
          {"max_weighted_in", number(s.max_weighted_in)},
          {"max_weighted_out", number(s.max_weighted_out)},
          {"mean_weighted_degree", number(s.mean_weighted_degree)},
          {"max_unweighted_in", number(s.max_unweighted_in)},
          {"max_unweighted_out", number(s.max_unweighted_out)},
          {"mean_unweighted_degree", number(s.mean_unweighted_degree)},
          {"reciprocity", optional_number(s.reciprocity)},
          {"adjacent_discordant_share", optional_number(s.adjacent_discordant_share)}};
}

json summary_json(const DistributionSummary& s) {
  return {{"n", number(s.n)},           {"mean_km", number(s.mean)}, {"stddev_km", number(s.stddev)},
          {"cv", number(s.cv)},         {"median_km", number(s.median)}, {"q90_km", number(s.q90)},
          {"q95_km", number(s.q95)}};
}

json fit_json(const RegressionFit& f, const std::vector<std::string>& regions) {
  json outliers = json::array();
  for (std::size_t i = 0; i < f.outlier.size() && i < regions.size(); ++i) {
    if (f.outlier[i]) outliers.push_back(regions[i]);
  }
  return {{"slope", number(f.slope)},
          {"intercept", number(f.intercept)},
          {"r_squared", number(f.r_squared)},
          {"residual_std", number(f.residual_std)},
          {"outliers", outliers}};
}

json fits_json(const DegreeFits& f) {
  return {{"points", f.regions.size()},
          {"out_vs_in", fit_json(f.out_vs_in, f.regions)},
          {"out_vs_population", fit_json(f.out_vs_pop, f.regions)},
          {"in_vs_population", fit_json(f.in_vs_pop, f.regions)}};
}

json selections_json(const std::vector<TopKSelection>& selections) {
  json arr = json::array();
  for (const auto& s : selections) {
    json values = json::array();
    for (double v : s.values) values.push_back(number(v));
    arr.push_back({{"metric", to_string(s.metric)},
                   {"k", s.k},
                   {"elbow_k", s.elbow_k ? json(*s.elbow_k) : json(nullptr)},
                   {"members", s.members},
                   {"values", values}});
  }
  return arr;
}

json distances_json(const DistanceReport& r) {
  json groups = json::array();
  for (const auto& g : r.groups) {
    groups.push_back({{"name", g.name},
                      {"journeys", g.journeys},
                      {"support_intervals", g.dist.size()},
                      {"em_iterations", g.dist.iterations},
                      {"converged", g.dist.converged},
                      {"summary", summary_json(g.summary)}});
  }
  return {{"groups", groups}, {"u_tests", tests_json(r.u_tests)}, {"z_tests", tests_json(r.z_tests)}};
}

// ---------------------------------------------------------------------------

void require_inputs(const RunConfig& c, bool need_coverage) {
  if (c.events.empty() || c.boundaries.empty() || c.attributes.empty()) {
    throw UsageError(c.subcommand + " needs --events, --boundaries and --attributes");
  }
  if (need_coverage && c.coverage.empty()) throw UsageError(c.subcommand + " needs --coverage");
}

void require_seed(const RunConfig& c) {
  if (!c.seed_given) throw UsageError(c.subcommand + " is stochastic and needs an explicit --seed");
}

Dataset load_dataset(const RunConfig& c, double beta) {
  InputPaths paths{c.events, c.boundaries, c.attributes, std::nullopt};
  if (!c.coverage.empty()) paths.coverage = c.coverage;
  return load(paths, {beta, c.fips});
}

DistanceOptions distance_options(const RunConfig& c) {
  DistanceOptions opts;
  opts.mc.reps = c.reps;
  opts.mc.n_per_rep = c.n_per_rep;
  opts.mc.seed = c.seed;
  opts.alpha = c.alpha;
  opts.family_size = c.family_size;
  return opts;
}

std::string fmt(double v) { return csv::format_number(v); }

json provenance_json(const Dataset& ds) {
  json log = json::array();
  for (const auto& rec : ds.provenance.log) {
    log.push_back({{"kind", rec.kind}, {"subject", rec.subject}, {"reason", rec.reason}});
  }
  return {{"files", ds.provenance.files},
          {"event_rows", ds.provenance.event_rows},
          {"events_retained", ds.provenance.events_retained},
          {"events_excluded", ds.provenance.events_excluded},
          {"events_merged", ds.provenance.events_merged},
          {"excluded_regions", ds.excluded_regions},
          {"log", log}};
}

int cmd_stats(const RunConfig& c, std::ostream& log) {
  require_inputs(c, false);
  const auto ds = load_dataset(c, c.beta);
  const auto report = validate(ds);
  const auto net = build_network(ds.events);
  const auto adjacency = adjacent_pairs(ds.boundaries);
  Output out(c, log);
  out.json_file("stats.json",
                {{"dataset", provenance_json(ds)},
                 {"validation",
                  {{"orphan_regions", report.orphan_regions},
                   {"zero_population", report.zero_population},
                   {"share_violations", report.share_violations},
                   {"duplicate_rows_merged", report.duplicate_rows_merged}}},
                 {"adjacent_pairs", adjacency.size()},
                 {"with_self_loops", stats_json(summary_stats(net, &adjacency))},
                 {"without_self_loops", stats_json(summary_stats(remove_self_loops(net), &adjacency))}});
  return kExitOk;
}

int cmd_degrees(const RunConfig& c, std::ostream& log) {
  require_inputs(c, false);
  const auto ds = load_dataset(c, c.beta);
  const auto net = build_network(ds.events);
  const auto w_in = degree_vector(net, DegreeKind::WeightedIn, true);
  const auto w_out = degree_vector(net, DegreeKind::WeightedOut, true);
  const auto u_in = degree_vector(net, DegreeKind::UnweightedIn, true);
  const auto u_out = degree_vector(net, DegreeKind::UnweightedOut, true);
  const auto w_in_nl = degree_vector(net, DegreeKind::WeightedIn, false);
  const auto w_out_nl = degree_vector(net, DegreeKind::WeightedOut, false);
  const auto pc = per_capita_metrics(net, ds.attributes, false);
  std::map<std::string, std::pair<double, double>> per_capita;
  for (std::size_t i = 0; i < pc.regions.size(); ++i) per_capita[pc.regions[i]] = {pc.ipc[i], pc.opc[i]};

  std::ostringstream body;
  csv::write_row(body, {"region_id", "population", "weighted_in", "weighted_out", "unweighted_in", "unweighted_out",
                        "weighted_in_no_loops", "weighted_out_no_loops", "ipc", "opc"});
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    const auto& id = net.nodes()[i];
    auto pcit = per_capita.find(id);
    const bool scored = pcit != per_capita.end();
    csv::write_row(body, {id, std::to_string(ds.attributes.at(id).population), fmt(w_in.values[i]),
                          fmt(w_out.values[i]), fmt(u_in.values[i]), fmt(u_out.values[i]), fmt(w_in_nl.values[i]),
                          fmt(w_out_nl.values[i]), scored ? fmt(pcit->second.first) : "",
                          scored ? fmt(pcit->second.second) : ""});
  }
  Output out(c, log);
  out.csv_file("degrees.csv", body.str());
  out.json_file("degree_fits.json", {{"fits", fits_json(degree_fits(net, ds.attributes))},
                                     {"per_capita_skipped", pc.skipped}});
  return kExitOk;
}

int cmd_hits(const RunConfig& c, std::ostream& log) {
  require_inputs(c, false);
  const auto ds = load_dataset(c, c.beta);
  const auto scores = hits(build_network(ds.events));
  std::ostringstream body;
  csv::write_row(body, {"region_id", "hub", "authority"});
  for (std::size_t i = 0; i < scores.nodes.size(); ++i) {
    csv::write_row(body, {scores.nodes[i], fmt(scores.hub[i]), fmt(scores.authority[i])});
  }
  Output out(c, log);
  out.csv_file("hits.csv", body.str());
  out.json_file("hits.json", {{"iterations", scores.iterations}, {"converged", scores.converged}});
  return kExitOk;
}

int cmd_temporal(const RunConfig& c, std::ostream& log) {
  require_inputs(c, false);
  if (c.window < 1) throw UsageError("--window must be at least 1");
  const auto ds = load_dataset(c, c.beta);
  const auto series = slice_series(ds.events, c.window, false);
  const std::array directions{TemporalDirection::Undirected, TemporalDirection::In, TemporalDirection::Out};
  std::vector<TemporalCorr> corr;
  for (auto d : directions) corr.push_back(temporal_correlation(series, d));

  std::ostringstream body;
  csv::write_row(body, {"region_id", "undirected", "in", "out", "defined_undirected", "defined_in", "defined_out"});
  for (std::size_t i = 0; i < series.universe.size(); ++i) {
    csv::write_row(body, {series.universe[i], fmt(corr[0].values[i]), fmt(corr[1].values[i]),
                          fmt(corr[2].values[i]), corr[0].defined[i] ? "1" : "0", corr[1].defined[i] ? "1" : "0",
                          corr[2].defined[i] ? "1" : "0"});
  }

  const auto net = build_network(ds.events);
  const auto pairs = discordant_pairs(net);
  const auto intervals = interval_table(ds.boundaries, pairs);
  const auto loop_series = slice_series(ds.events, c.window, true);
  const auto summaries = series_summaries(loop_series, intervals);
  json windows = json::array();
  std::vector<double> shares;
  for (const auto& w : summaries) {
    windows.push_back({{"window", w.window},
                       {"total_weight", w.total_weight},
                       {"discordant_weight", w.discordant_weight},
                       {"self_loop_share", optional_number(w.self_loop_share)},
                       {"mean_km", optional_number(w.mean_km)},
                       {"median_km", optional_number(w.median_km)}});
    if (w.self_loop_share) shares.push_back(*w.self_loop_share);
  }
  json trend = json::object();
  if (shares.size() >= 4) {
    trend["mann_kendall"] = test_json(mann_kendall(shares));
    trend["hamed_rao"] = test_json(hamed_rao_trend(shares));
  } else {
    trend["note"] = "self-loop share trend needs at least four non-empty windows";
  }
  json overall = json::object();
  for (const auto& tc : corr) {
    overall[std::string(to_string(tc.direction))] = {{"overall", number(tc.overall)},
                                                     {"defined_nodes", tc.defined_count}};
  }
  Output out(c, log);
  out.csv_file("temporal.csv", body.str());
  out.json_file("temporal.json", {{"windows_in_series", series.size()},
                                  {"correlation", overall},
                                  {"windows", windows},
                                  {"self_loop_share_trend", trend}});
  return kExitOk;
}

int cmd_distances(const RunConfig& c, std::ostream& log) {
  require_inputs(c, false);
  require_seed(c);
  const auto ds = load_dataset(c, c.beta);
  const auto net = build_network(ds.events);
  const auto selections = standard_selections(net, ds.attributes, c.k);
  const auto pairs = discordant_pairs(net);
  const auto intervals = interval_table(ds.boundaries, pairs);
  const auto report = journey_distance_by_group(net, selections, intervals, distance_options(c));
  Output out(c, log);
  out.json_file("distances.json", {{"selections", selections_json(selections)}, {"distances", distances_json(report)}});
  if (c.plots) {
    std::vector<report::Series> series;
    std::vector<report::Bar> bars;
    for (const auto& g : report.groups) {
      series.push_back({g.name, g.dist});
      bars.push_back({g.name, g.summary.mean, 0.0});
    }
    out.svg_file("survival.svg", report::survival_svg(series, "Journey distance survival"));
    out.svg_file("distance_bars.svg", report::bar_svg(bars, "Mean journey distance by group", "km"));
  }
  return kExitOk;
}

int cmd_profile(const RunConfig& c, std::ostream& log) {
  require_inputs(c, false);
  const auto ds = load_dataset(c, c.beta);
  const auto net = build_network(ds.events);
  const auto selections = standard_selections(net, ds.attributes, c.k);
  ProfileOptions popts;
  popts.alpha = c.alpha;
  const auto report = profile_groups(selections, ds.attributes, net.nodes(), popts);

  std::ostringstream body;
  csv::write_row(body, {"group", "attribute", "value"});
  for (const auto& g : report.groups) {
    auto row = [&](const std::string& attr, double v) { csv::write_row(body, {g.name, attr, fmt(v)}); };
    row("members", static_cast<double>(g.members.size()));
    row("mean_population", g.mean_population);
    row("urban_share", g.urban_share);
    row("rural_share", g.rural_share);
    for (auto u : kAllUrbanicity) {
      row("urbanicity_" + std::string(to_string(u)), g.urbanicity_share[static_cast<std::size_t>(u) - 1]);
    }
    for (const auto& [cat, v] : g.demographic_means) row("share_" + cat, v);
    row("employed_mean", g.employed_mean);
    row("poverty_mean", g.poverty_mean);
  }
  Output out(c, log);
  out.csv_file("profiles.csv", body.str());
  out.json_file("profile_tests.json", {{"selections", selections_json(selections)},
                                       {"population_tests", tests_json(report.population_tests)},
                                       {"socioeconomic_tests", tests_json(report.socioeconomic_tests)},
                                       {"urbanicity_tests", tests_json(report.urbanicity_tests)},
                                       {"notes", report.notes}});
  if (c.plots) {
    const auto loop_free = remove_self_loops(net);
    const auto pc = per_capita_metrics(loop_free, ds.attributes, false);
    const auto scores = hits(loop_free);
    const std::vector<std::pair<Metric, std::vector<double>>> curves{
        {Metric::IPC, pc.ipc}, {Metric::OPC, pc.opc}, {Metric::Authority, scores.authority}, {Metric::Hub, scores.hub}};
    for (auto [metric, values] : curves) {
      std::sort(values.begin(), values.end(), std::greater<>());
      std::optional<std::size_t> knee;
      if (values.size() >= 3) {
        if (auto idx = kneedle_elbow(values)) knee = *idx + 1;
      }
      const std::string name(to_string(metric));
      out.svg_file("elbow_" + name + ".svg", report::elbow_svg(values, knee, "Sorted " + name + " scores"));
    }
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& c, std::ostream& log) {
  require_inputs(c, true);
  require_seed(c);
  if (c.betas.empty()) throw UsageError("--betas needs at least one value");
  // The sweep applies its own thresholds, so load everything.
  const auto ds = load_dataset(c, 0.0);
  SweepOptions opts;
  opts.betas = c.betas;
  opts.window_length = c.window;
  opts.k = c.k;
  opts.distance = distance_options(c);
  const auto sweep = sensitivity_sweep(ds.events, ds.attributes, ds.coverage, ds.boundaries, opts);

  json by_beta;
  for (const auto& e : sweep.entries) {
    json persistence = json::array();
    for (const auto& p : e.persistence) {
      persistence.push_back(
          {{"group", p.name}, {"undirected", number(p.undirected)}, {"in", number(p.in)}, {"out", number(p.out)}});
    }
    by_beta[fmt(e.beta)] = {{"retained", e.retained},
                            {"removed", e.removed},
                            {"nodes", e.nodes},
                            {"edges", e.edges},
                            {"fits", fits_json(e.fits)},
                            {"selections", selections_json(e.selections)},
                            {"distances", distances_json(e.distances)},
                            {"persistence", persistence}};
  }
  log << "subgraph property " << (sweep.subgraph_property ? "holds" : "VIOLATED") << " across "
      << sweep.entries.size() << " thresholds\n";
  for (const auto& v : sweep.violations) log << "  " << v << "\n";
  Output out(c, log);
  out.json_file("sweep.json", {{"subgraph_property", sweep.subgraph_property},
                               {"violations", sweep.violations},
                               {"betas", by_beta}});
  return kExitOk;
}

synth::CoverageDip parse_dip(const std::string& text) {
  std::istringstream is(text);
  std::string region, window, value;
  if (!std::getline(is, region, ':') || !std::getline(is, window, ':') || !std::getline(is, value)) {
    throw UsageError("--dip expects region:window:coverage, got '" + text + "'");
  }
  try {
    return {static_cast<std::size_t>(std::stoull(region)), std::stoi(window), std::stod(value)};
  } catch (const std::exception&) {
    throw UsageError("--dip expects region:window:coverage, got '" + text + "'");
  }
}

int cmd_synth(RunConfig c, std::ostream& log) {
  require_seed(c);
  c.gen.seed = c.seed;
  c.gen.coverage_dips.clear();
  for (const auto& d : c.dips) c.gen.coverage_dips.push_back(parse_dip(d));
  const auto data = synth::generate(c.gen);

  Output out(c, log);
  std::ostringstream events, boundaries, attributes, coverage;
  write_events(events, data.events);
  write_boundaries(boundaries, data.boundaries);
  write_attributes(attributes, data.attributes);
  write_coverage(coverage, data.coverage);
  out.csv_file("events.csv", events.str());
  out.csv_file("boundaries.csv", boundaries.str());
  out.csv_file("attributes.csv", attributes.str());
  out.csv_file("coverage.csv", coverage.str());
  const bool discordant_possible = data.region_ids.size() > 1 && c.gen.self_loop_prob < 1.0;
  out.json_file("synth.json",
                {{"regions", data.region_ids.size()},
                 {"event_rows", data.events.size()},
                 {"attractors", data.attractors},
                 {"expected_discordant_km",
                  discordant_possible ? number(synth::expected_discordant_distance(c.gen, data)) : json(nullptr)}});
  return kExitOk;
}

void add_inputs(CLI::App* sub, RunConfig& c) {
  sub->add_option("--events", c.events, "Journey events CSV");
  sub->add_option("--boundaries", c.boundaries, "Region boundaries (GeoJSON or CSV)");
  sub->add_option("--attributes", c.attributes, "Region attributes CSV");
  sub->add_option("--coverage", c.coverage, "Coverage CSV (region_id,window,coverage)");
  sub->add_option("--beta", c.beta, "Coverage threshold for exclusion")->capture_default_str();
  sub->add_flag("--fips", c.fips, "Require five-character region ids");
}

void add_out(CLI::App* sub, RunConfig& c) {
  sub->add_option("--out", c.out, "Output directory")->capture_default_str();
}

void add_seed(CLI::App* sub, RunConfig& c) {
  sub->add_option_function<std::uint64_t>(
      "--seed",
      [&c](const std::uint64_t& s) {
        c.seed = s;
        c.seed_given = true;
      },
      "Master random seed (required)");
}

void add_tests(CLI::App* sub, RunConfig& c) {
  sub->add_option("--k", c.k, "Top-k group size")->capture_default_str();
  sub->add_option("--alpha", c.alpha, "Significance level")->capture_default_str();
}

void add_mc(CLI::App* sub, RunConfig& c) {
  sub->add_option("--reps", c.reps, "Monte Carlo replicates")->capture_default_str();
  sub->add_option("--n-per-rep", c.n_per_rep, "Draws per group per replicate")->capture_default_str();
  sub->add_option("--family-size", c.family_size, "Holm family size (0: number of comparisons)")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"journeynet: origin-destination journey network analysis", "journeynet"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", JOURNEYNET_VERSION);

  std::map<std::string, std::function<int()>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, std::function<int()> fn) {
    handlers[name] = std::move(fn);
    return app.add_subcommand(name, help);
  };

  auto* stats = sub("stats", "Network summary statistics", [&] { return cmd_stats(c, out); });
  add_inputs(stats, c);
  add_out(stats, c);

  auto* degrees = sub("degrees", "Degree table and log-log fits", [&] { return cmd_degrees(c, out); });
  add_inputs(degrees, c);
  add_out(degrees, c);

  auto* hits_cmd = sub("hits", "Hub and authority scores", [&] { return cmd_hits(c, out); });
  add_inputs(hits_cmd, c);
  add_out(hits_cmd, c);

  auto* temporal = sub("temporal", "Temporal edge persistence", [&] { return cmd_temporal(c, out); });
  add_inputs(temporal, c);
  add_out(temporal, c);
  temporal->add_option("--window", c.window, "Periods per window")->capture_default_str();

  auto* distances = sub("distances", "Journey distance by group", [&] { return cmd_distances(c, out); });
  add_inputs(distances, c);
  add_out(distances, c);
  add_seed(distances, c);
  add_tests(distances, c);
  add_mc(distances, c);
  distances->add_flag("--plots", c.plots, "Write SVG plots");

  auto* profile = sub("profile", "Group demographic profiles and tests", [&] { return cmd_profile(c, out); });
  add_inputs(profile, c);
  add_out(profile, c);
  add_tests(profile, c);
  profile->add_flag("--plots", c.plots, "Write SVG elbow plots");

  auto* sweep = sub("sweep", "Coverage threshold sensitivity sweep", [&] { return cmd_sweep(c, out); });
  add_inputs(sweep, c);
  add_out(sweep, c);
  add_seed(sweep, c);
  add_tests(sweep, c);
  add_mc(sweep, c);
  sweep->add_option("--window", c.window, "Periods per window")->capture_default_str();
  sweep->add_option("--betas", c.betas, "Comma-separated thresholds")->delimiter(',')->capture_default_str();

  auto* synth_cmd = sub("synth", "Generate a synthetic dataset", [&] { return cmd_synth(c, out); });
  add_out(synth_cmd, c);
  add_seed(synth_cmd, c);
  auto& g = c.gen;
  synth_cmd->add_option("--rows", g.rows, "Grid rows")->capture_default_str();
  synth_cmd->add_option("--cols", g.cols, "Grid columns")->capture_default_str();
  synth_cmd->add_option("--origin-lat", g.origin_lat, "South edge of the grid")->capture_default_str();
  synth_cmd->add_option("--origin-lon", g.origin_lon, "West edge of the grid")->capture_default_str();
  synth_cmd->add_option("--cell-deg", g.cell_deg, "Cell side in degrees")->capture_default_str();
  synth_cmd->add_option("--pop-min", g.population_min, "Pareto scale")->capture_default_str();
  synth_cmd->add_option("--pop-alpha", g.population_alpha, "Pareto exponent")->capture_default_str();
  synth_cmd->add_option("--a", g.a, "Origin population exponent")->capture_default_str();
  synth_cmd->add_option("--b", g.b, "Destination population exponent")->capture_default_str();
  synth_cmd->add_option("--lambda", g.lambda_km, "Distance decay scale (km)")->capture_default_str();
  synth_cmd->add_option("--self-loop-prob", g.self_loop_prob, "Self-loop probability")->capture_default_str();
  synth_cmd->add_option("--windows", g.windows, "Number of windows")->capture_default_str();
  synth_cmd->add_option("--periods", g.periods_per_window, "Periods per window")->capture_default_str();
  synth_cmd->add_option("--events-per-window", g.events_per_window, "Events drawn per window")
      ->capture_default_str();
  synth_cmd->add_option("--persistence", g.persistence, "Edge reuse share across windows")->capture_default_str();
  synth_cmd->add_option("--attractors", g.attractors, "Number of attractor regions")->capture_default_str();
  synth_cmd->add_option("--boost", g.attractor_boost, "Attractor weight multiplier")->capture_default_str();
  synth_cmd->add_option("--lambda-scale", g.attractor_lambda_scale, "Attractor decay scale multiplier")
      ->capture_default_str();
  synth_cmd->add_option("--coverage-base", g.coverage_base, "Baseline coverage")->capture_default_str();
  synth_cmd->add_option("--dip", c.dips, "Coverage dip region:window:value (repeatable)");

  if (args.empty()) {
    err << app.help();
    return kExitUsage;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    for (auto* s : app.get_subcommands()) out << s->help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << JOURNEYNET_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  c.subcommand = app.get_subcommands().front()->get_name();
  try {
    return handlers.at(c.subcommand)();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace journeynet::cli
