#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polya/network.hpp"
#include "polya/network_io.hpp"
#include "polya/policy.hpp"
#include "polya/trace.hpp"

namespace polya {

// A budget either in absolute ball mass or per node ("10N" in config files).
struct Amount {
  double value = 0.0;
  bool per_node = false;

  double resolve(std::size_t nodes) const {
    return per_node ? value * static_cast<double>(nodes) : value;
  }
  // Accepts "12.5" and "10N".
  static Amount parse(std::string_view text);
  std::string to_string() const;
};

struct NetworkSource {
  std::filesystem::path path;  // used when non-empty
  LoadOptions load{};
  // Barabasi-Albert parameters, used when no path is given.
  std::size_t ba_nodes = 0;
  std::size_t ba_m = 1;
  std::uint64_t ba_seed = 0;

  Network resolve() const;
};

struct ExperimentConfig {
  std::string label;
  NetworkSource network{};

  // Initialization: black side from a strategy, red side uniform
  // (R_i = init_red_budget / N).
  StrategySpec init = StrategySpec::parse("init:ii");
  Amount init_black_budget{};
  Amount init_red_budget{};

  // Curing: a strategy spending cure_black_budget per step, or (when unset) a
  // fixed delta_black at every node.
  std::optional<StrategySpec> cure;
  Amount cure_black_budget{};
  double delta_black = 0.0;
  // Infection side is uniform: Delta_r = cure_red_budget / N when set, else
  // delta_red.
  std::optional<Amount> cure_red_budget;
  double delta_red = 0.0;

  std::size_t steps = 1;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  // Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 0;
  // Record a full per-node trace of trial 0.
  bool trace_first_trial = false;

  // Throws polya::Error when steps/trials are zero or budgets negative.
  void validate() const;
  std::string display_label() const;
};

/// Per-time empirical average infection rate over trials.
struct SummarySeries {
  std::string strategy;
  std::size_t trials = 0;
  std::vector<double> mean;    // entry t-1 is time t
  std::vector<double> stderr_; // standard error of the mean over trials
};

struct ExperimentResult {
  SummarySeries series;
  // per_trial[s][t-1]: fraction of nodes infected at time t in trial s.
  std::vector<std::vector<double>> per_trial;
  std::vector<double> initial_red;
  std::vector<double> initial_black;
  std::optional<TraceRecorder> trace;
  std::size_t policy_fallbacks = 0;
};

/// Runs cfg.trials independent trials of cfg.steps draws. Trial s takes its
/// uniforms from (cfg.seed, s, t, i), so the result is identical for any
/// thread count; aggregation runs in trial order.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const Network& net);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct PairwiseDifference {
  std::size_t first = 0;   // arm indices
  std::size_t second = 0;
  // mean(first) - mean(second) per time.
  std::vector<double> difference;
  // sqrt(se_first^2 + se_second^2)
  std::vector<double> pooled_stderr;
  // Standard error of the per-trial paired differences (common random
  // numbers only).
  std::vector<double> paired_stderr;
  std::vector<double> z;  // difference / pooled_stderr
};

struct Comparison {
  std::vector<ExperimentResult> arms;
  std::vector<PairwiseDifference> differences;  // all pairs first < second
};

struct CompareOptions {
  // Arms share the uniforms of each trial index unless this is set, in which
  // case arm k runs on a seed derived from (seed, k).
  bool independent_streams = false;
};

Comparison compare_strategies(std::span<const ExperimentConfig> arms,
                              const Network& net,
                              const CompareOptions& options = {});

// One arm per strategy; each spec replaces the init or cure strategy of
// `base` according to its family.
Comparison compare_strategies(const ExperimentConfig& base,
                              std::span<const StrategySpec> strategies,
                              const Network& net,
                              const CompareOptions& options = {});

PairwiseDifference difference(const ExperimentResult& a,
                              const ExperimentResult& b);

}  // namespace polya
