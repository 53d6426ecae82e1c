#include <benchmark/benchmark.h>

#include <vector>

#include "polya/exact.hpp"
#include "polya/experiment.hpp"
#include "polya/graph_analysis.hpp"
#include "polya/optimizer.hpp"
#include "polya/random.hpp"
#include "polya/urn_state.hpp"

using namespace polya;

namespace {

Network eight_node() {
  std::vector<Edge> e{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {4, 6}, {5, 6}, {6, 7}};
  return Network(8, e);
}

void BM_EngineStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Network net = generate_barabasi_albert(n, 3, 1);
  std::vector<double> ten(n, 10.0), y(n);
  UrnState s(net, ten, ten);
  auto delta = Reinforcement::constant(n, 5, 5);
  std::uint64_t t = 0;
  for (auto _ : state) {
    ++t;
    for (NodeId i = 0; i < n; ++i) y[i] = draw_uniform(1, 0, t, i);
    benchmark::DoNotOptimize(s.step(delta, y).data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_EngineStep)->Arg(100)->Arg(1000)->Arg(10000);

void BM_Closeness(benchmark::State& state) {
  Network net = generate_barabasi_albert(static_cast<std::size_t>(state.range(0)), 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(closeness_centrality(net));
}
BENCHMARK(BM_Closeness)->Arg(100)->Arg(1363);

void BM_TargetSets(benchmark::State& state) {
  Network net = generate_barabasi_albert(static_cast<std::size_t>(state.range(0)), 1, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(target_set_layered(net));
    benchmark::DoNotOptimize(target_set_dense(net, true));
  }
}
BENCHMARK(BM_TargetSets)->Arg(100)->Arg(1363);

void BM_ExactEnumeration(benchmark::State& state) {
  Network net = path_graph(4);
  std::vector<double> ones(4, 1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        average_infection_rates(net, ones, ones, constant_reinforcement(1, 1), n));
  }
}
BENCHMARK(BM_ExactEnumeration)->Arg(2)->Arg(3)->Arg(4);

void BM_OptimizeInit(benchmark::State& state) {
  Network net = generate_barabasi_albert(100, 1, 1);
  std::vector<double> red(100, 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(optimize_init(net, red, 1000.0));
}
BENCHMARK(BM_OptimizeInit)->Unit(benchmark::kMillisecond);

void BM_OptimizeCureStep(benchmark::State& state) {
  Network net = eight_node();
  std::vector<double> ten(8, 10.0);
  UrnState s(net, ten, ten);
  DescentConfig cfg;
  cfg.step_rule = state.range(0) ? DescentStepRule::kPairwise : DescentStepRule::kClassic;
  for (auto _ : state) benchmark::DoNotOptimize(optimize_cure_step(s, 80, ten, cfg));
}
BENCHMARK(BM_OptimizeCureStep)->ArgName("pairwise")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_NashSolve(benchmark::State& state) {
  Network net = eight_node();
  std::vector<double> ten(8, 10.0);
  UrnState s(net, ten, ten);
  for (auto _ : state) benchmark::DoNotOptimize(nash_solve(s, 80, 80));
}
BENCHMARK(BM_NashSolve)->Unit(benchmark::kMillisecond);

void BM_Experiment(benchmark::State& state) {
  Network net = generate_barabasi_albert(100, 1, 1);
  ExperimentConfig cfg;
  cfg.init = StrategySpec::parse("init:iii");
  cfg.init_black_budget = {10, true};
  cfg.init_red_budget = {10, true};
  cfg.cure = StrategySpec::parse("cure:iv");
  cfg.cure_black_budget = {10, true};
  cfg.delta_red = 10;
  cfg.steps = 50;
  cfg.trials = 100;
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg, net));
}
BENCHMARK(BM_Experiment)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
