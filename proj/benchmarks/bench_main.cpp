#include <benchmark/benchmark.h>

#include <random>

#include "journeynet/geo.hpp"
#include "journeynet/network.hpp"
#include "journeynet/survival.hpp"
#include "journeynet/synth.hpp"

using namespace journeynet;

namespace {

synth::SyntheticData grid(int side, std::size_t events) {
  synth::GeneratorConfig cfg;
  cfg.rows = side;
  cfg.cols = side;
  cfg.cell_deg = 0.2;
  cfg.windows = 1;
  cfg.events_per_window = events;
  cfg.seed = 1;
  return synth::generate(cfg);
}

void BM_Hits(benchmark::State& state) {
  const auto side = static_cast<int>(state.range(0));
  const auto data = grid(side, static_cast<std::size_t>(side) * side * 20);
  const auto net = build_network(data.events);
  for (auto _ : state) benchmark::DoNotOptimize(hits(net));
  state.counters["edges"] = static_cast<double>(net.edge_count());
}
BENCHMARK(BM_Hits)->Arg(10)->Arg(20)->Arg(40);

void BM_Turnbull(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::exponential_distribution<double> expo(0.01);
  std::uniform_real_distribution<double> width(5.0, 40.0);
  CensoredSample sample;
  for (int i = 0; i < state.range(0); ++i) {
    const double x = expo(rng), w = width(rng);
    sample.push_back({{std::max(0.0, x - w / 2), x + w / 2}, 1.0});
  }
  for (auto _ : state) benchmark::DoNotOptimize(turnbull_fit(sample));
}
BENCHMARK(BM_Turnbull)->Arg(200)->Arg(1000)->Arg(5000);

void BM_BoundaryBounds(benchmark::State& state) {
  const auto data = grid(static_cast<int>(state.range(0)), 10);
  std::vector<RegionPair> pairs;
  for (const auto& a : data.region_ids) {
    for (const auto& b : data.region_ids) {
      if (a != b) pairs.emplace_back(a, b);
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(interval_table(data.boundaries, pairs));
  state.counters["pairs"] = static_cast<double>(pairs.size());
}
BENCHMARK(BM_BoundaryBounds)->Arg(5)->Arg(10);

}  // namespace
BENCHMARK_MAIN();
