#include "polya/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "polya/error.hpp"
#include "polya/format.hpp"
#include "polya/graph_analysis.hpp"
#include "polya/random.hpp"

namespace polya {

Amount Amount::parse(std::string_view text) {
  Amount a;
  std::string_view number = text;
  if (!number.empty() && (number.back() == 'N' || number.back() == 'n')) {
    a.per_node = true;
    number.remove_suffix(1);
  }
  auto [ptr, ec] =
      std::from_chars(number.data(), number.data() + number.size(), a.value);
  if (number.empty() || ec != std::errc{} ||
      ptr != number.data() + number.size()) {
    throw Error("cannot parse amount '" + std::string(text) + "'");
  }
  if (!(a.value >= 0.0)) throw Error("amounts must be nonnegative");
  return a;
}

std::string Amount::to_string() const {
  return format_double(value) + (per_node ? "N" : "");
}

Network NetworkSource::resolve() const {
  if (!path.empty()) return load_network(path, load);
  if (ba_nodes == 0) throw Error("no network configured (file or BA parameters)");
  return generate_barabasi_albert(ba_nodes, ba_m, ba_seed);
}

void ExperimentConfig::validate() const {
  if (steps == 0) throw Error("steps must be at least 1");
  if (trials == 0) throw Error("trials must be at least 1");
  if (init.family != StrategyFamily::kInit) {
    throw Error("init strategy must belong to the init family");
  }
  if (cure && cure->family != StrategyFamily::kCure) {
    throw Error("cure strategy must belong to the cure family");
  }
  if (!(delta_black >= 0.0) || !(delta_red >= 0.0)) {
    throw Error("reinforcement values must be nonnegative");
  }
}

std::string ExperimentConfig::display_label() const {
  if (!label.empty()) return label;
  return cure ? init.to_string() + "+" + cure->to_string() : init.to_string();
}

namespace {

struct TrialFailure {
  std::size_t trial;
  std::size_t step;
  std::string message;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, const Network& net) {
  cfg.validate();
  const std::size_t n = net.size();
  PolicySuite suite(net);

  ExperimentResult result;
  result.initial_red.assign(n, cfg.init_red_budget.resolve(n) / static_cast<double>(n));
  result.initial_black =
      suite.allocate_init(cfg.init, result.initial_red, cfg.init_black_budget.resolve(n));

  const std::vector<double> red_step(
      n, cfg.cure_red_budget ? cfg.cure_red_budget->resolve(n) / static_cast<double>(n)
                             : cfg.delta_red);
  const double cure_budget = cfg.cure_black_budget.resolve(n);

  // Fails early (with a clear message) on empty super urns.
  UrnState prototype(net, result.initial_red, result.initial_black);

  result.per_trial.assign(cfg.trials, std::vector<double>(cfg.steps, 0.0));
  if (cfg.trace_first_trial) result.trace.emplace();

  auto run_trial = [&](std::size_t s) {
    UrnState state = prototype;
    std::vector<double> y(n);
    Reinforcement delta{red_step, std::vector<double>(n, cfg.delta_black)};
    for (std::size_t t = 1; t <= cfg.steps; ++t) {
      try {
        if (cfg.cure) {
          delta.black = suite.allocate_cure(*cfg.cure, state, cure_budget, red_step);
        }
        for (NodeId i = 0; i < n; ++i) y[i] = draw_uniform(cfg.seed, s, t, i);
        auto z = state.step(delta, y);
        std::size_t infected = 0;
        for (auto v : z) infected += v;
        result.per_trial[s][t - 1] =
            static_cast<double>(infected) / static_cast<double>(n);
        if (s == 0 && result.trace) result.trace->record(state);
      } catch (const std::exception& e) {
        throw TrialFailure{s, t, e.what()};
      }
    }
  };

  std::size_t workers = cfg.threads ? cfg.threads
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, cfg.trials);
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::optional<TrialFailure> failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t s = next.fetch_add(1);
      if (s >= cfg.trials) return;
      try {
        run_trial(s);
      } catch (const TrialFailure& f) {
        std::lock_guard lock(failure_mutex);
        if (!failure || f.trial < failure->trial) failure = f;
        next.store(cfg.trials);
        return;
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) {
    throw Error("trial " + std::to_string(failure->trial) + ", step " +
                std::to_string(failure->step) + ": " + failure->message);
  }

  auto& series = result.series;
  series.strategy = cfg.display_label();
  series.trials = cfg.trials;
  series.mean.assign(cfg.steps, 0.0);
  series.stderr_.assign(cfg.steps, 0.0);
  const double count = static_cast<double>(cfg.trials);
  for (std::size_t t = 0; t < cfg.steps; ++t) {
    double sum = 0.0;
    for (std::size_t s = 0; s < cfg.trials; ++s) sum += result.per_trial[s][t];
    const double mean = sum / count;
    double ss = 0.0;
    for (std::size_t s = 0; s < cfg.trials; ++s) {
      const double d = result.per_trial[s][t] - mean;
      ss += d * d;
    }
    series.mean[t] = mean;
    series.stderr_[t] = cfg.trials > 1 ? std::sqrt(ss / (count - 1.0) / count) : 0.0;
  }
  result.policy_fallbacks = suite.fallback_count();
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const Network net = cfg.network.resolve();
  return run_experiment(cfg, net);
}

PairwiseDifference difference(const ExperimentResult& a,
                              const ExperimentResult& b) {
  const std::size_t steps = std::min(a.series.mean.size(), b.series.mean.size());
  PairwiseDifference d;
  d.difference.resize(steps);
  d.pooled_stderr.resize(steps);
  d.paired_stderr.assign(steps, 0.0);
  d.z.resize(steps);
  const bool paired = a.per_trial.size() == b.per_trial.size() && a.per_trial.size() > 1;
  for (std::size_t t = 0; t < steps; ++t) {
    d.difference[t] = a.series.mean[t] - b.series.mean[t];
    d.pooled_stderr[t] = std::hypot(a.series.stderr_[t], b.series.stderr_[t]);
    d.z[t] = d.pooled_stderr[t] > 0.0
                 ? d.difference[t] / d.pooled_stderr[t]
                 : (d.difference[t] == 0.0 ? 0.0
                                           : std::copysign(INFINITY, d.difference[t]));
    if (paired) {
      const std::size_t m = a.per_trial.size();
      double ss = 0.0;
      for (std::size_t s = 0; s < m; ++s) {
        const double r = a.per_trial[s][t] - b.per_trial[s][t] - d.difference[t];
        ss += r * r;
      }
      d.paired_stderr[t] = std::sqrt(ss / double(m - 1) / double(m));
    }
  }
  return d;
}

Comparison compare_strategies(std::span<const ExperimentConfig> arms,
                              const Network& net,
                              const CompareOptions& options) {
  Comparison out;
  out.arms.reserve(arms.size());
  for (std::size_t k = 0; k < arms.size(); ++k) {
    ExperimentConfig cfg = arms[k];
    if (options.independent_streams) cfg.seed = derive_key(cfg.seed, {k});
    out.arms.push_back(run_experiment(cfg, net));
  }
  for (std::size_t a = 0; a < out.arms.size(); ++a) {
    for (std::size_t b = a + 1; b < out.arms.size(); ++b) {
      auto d = difference(out.arms[a], out.arms[b]);
      d.first = a;
      d.second = b;
      out.differences.push_back(std::move(d));
    }
  }
  return out;
}

Comparison compare_strategies(const ExperimentConfig& base,
                              std::span<const StrategySpec> strategies,
                              const Network& net,
                              const CompareOptions& options) {
  std::vector<ExperimentConfig> arms;
  for (const auto& spec : strategies) {
    ExperimentConfig cfg = base;
    cfg.label.clear();
    if (spec.family == StrategyFamily::kInit) cfg.init = spec;
    else cfg.cure = spec;
    arms.push_back(std::move(cfg));
  }
  return compare_strategies(arms, net, options);
}

}  // namespace polya
