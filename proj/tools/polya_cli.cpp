#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "polya/config_file.hpp"
#include "polya/error.hpp"
#include "polya/exact.hpp"
#include "polya/experiment.hpp"
#include "polya/format.hpp"
#include "polya/graph_analysis.hpp"
#include "polya/network_io.hpp"
#include "polya/optimizer.hpp"
#include "polya/series_io.hpp"

namespace {

using namespace polya;
using json = nlohmann::ordered_json;

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> steps;
  std::string out;
  std::string format = "csv";
};

void write_output(const std::string& path,
                  const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write '" + path + "'");
  body(os);
  if (!os) throw Error("write to '" + path + "' failed");
}

json one_based(std::span<const NodeId> nodes) {
  json a = json::array();
  for (NodeId i : nodes) a.push_back(i + 1);
  return a;
}

// "2" broadcasts to every node; "1,2,3" (or space separated) gives one value
// per node.
std::vector<double> node_values(const std::string& text, std::size_t n,
                                const char* what) {
  std::vector<double> v;
  std::string token;
  std::istringstream in(text);
  while (in >> std::ws && std::getline(in, token, ',')) {
    std::istringstream parts(token);
    std::string piece;
    while (parts >> piece) {
      double x = 0;
      auto [p, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), x);
      if (ec != std::errc() || p != piece.data() + piece.size()) {
        throw Error(std::string(what) + ": bad number '" + piece + "'");
      }
      v.push_back(x);
    }
  }
  if (v.size() == 1) return std::vector<double>(n, v[0]);
  if (v.size() != n) {
    throw Error(std::string(what) + ": expected 1 or " + std::to_string(n) +
                " values, got " + std::to_string(v.size()));
  }
  return v;
}

// The game is well defined on disconnected graphs, so it skips the
// connectivity check that load_network applies.
Network load_any_network(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open network file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return format_from_extension(path) == NetworkFormat::kEdgeList
             ? parse_edge_list(text.str())
             : parse_adjacency_matrix(text.str());
}

json numbers(std::span<const double> v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

// ---- gen ------------------------------------------------------------------

struct GenArgs {
  std::size_t nodes = 100;
  std::size_t m = 1;
  std::string network_format = "edges";
};

void run_gen(const GenArgs& a, const Globals& g) {
  Network net = generate_barabasi_albert(a.nodes, a.m, g.seed.value_or(0));
  write_output(g.out, [&](std::ostream& os) {
    if (a.network_format == "adjacency") write_adjacency_matrix(os, net);
    else write_edge_list(os, net);
  });
  std::cerr << "generated " << net.size() << " nodes, " << net.edge_count()
            << " edges\n";
}

// ---- inspect --------------------------------------------------------------

struct InspectArgs {
  std::string net;
  bool largest_component = false;
  std::string automorphism;
};

json target_json(const TargetSet& t) { return one_based(t.nodes); }

void run_inspect(const InspectArgs& a, const Globals& g) {
  Network net = load_network(a.net, {.largest_component = a.largest_component});
  json out;
  out["nodes"] = net.size();
  out["edges"] = net.edge_count();
  out["outer"] = one_based(outer_nodes(net));
  out["inner"] = one_based(inner_nodes(net));
  out["closeness"] = numbers(closeness_centrality(net));
  out["layered_targets"] = target_json(target_set_layered(net));
  auto dense = target_set_dense(net, false);
  out["dense_targets"] = target_json(dense);
  out["dense_order"] = one_based(dense.selection_order);
  out["dense_pruned_targets"] = target_json(target_set_dense(net, true));
  if (!a.automorphism.empty()) {
    std::vector<NodeId> images;
    for (double x : node_values(a.automorphism, net.size(), "--automorphism")) {
      if (x < 1 || x != static_cast<double>(static_cast<NodeId>(x))) {
        throw Error("--automorphism: images are 1-based node ids");
      }
      images.push_back(static_cast<NodeId>(x) - 1);
    }
    auto check = verify_automorphism(net, Permutation(std::move(images)));
    json aut;
    aut["is_automorphism"] = check.is_automorphism;
    json orbits = json::array();
    for (const auto& o : check.orbits) orbits.push_back(one_based(o));
    aut["orbits"] = orbits;
    aut["order"] = check.order;
    out["automorphism"] = aut;
  }
  write_output(g.out, [&](std::ostream& os) { os << out.dump(2) << '\n'; });
}

// ---- exact ----------------------------------------------------------------

struct ExactArgs {
  std::string net;
  std::size_t n = 1;
  std::string red = "1";
  std::string black = "1";
  double delta_red = 1;
  double delta_black = 1;
  bool gradient = false;
  std::string curing;
  std::string infection;
};

void run_exact(const ExactArgs& a, const Globals& g) {
  Network net = load_network(a.net);
  const auto n = net.size();
  auto red = node_values(a.red, n, "--red");
  auto black = node_values(a.black, n, "--black");
  const std::size_t steps = g.steps.value_or(a.n);
  auto rates = average_infection_rates(
      net, red, black, constant_reinforcement(a.delta_red, a.delta_black), steps);

  std::optional<ValueAndGradient> grad;
  if (a.gradient) grad = infection_rate_time1(net, red, black);
  std::optional<ExposureResult> exposure;
  if (!a.curing.empty() || !a.infection.empty()) {
    UrnState state(net, red, black);
    exposure = expected_exposure(state, node_values(a.curing.empty() ? "0" : a.curing, n, "--curing"),
                                 node_values(a.infection.empty() ? "0" : a.infection, n, "--infection"));
  }

  const auto format = parse_output_format(g.format);
  write_output(g.out, [&](std::ostream& os) {
    if (format == OutputFormat::kJson) {
      json out;
      out["average_infection_rate"] = numbers(rates);
      if (grad) out["gradient_black"] = numbers(grad->gradient);
      if (exposure) {
        out["expected_exposure"] = exposure->value;
        out["exposure_grad_curing"] = numbers(exposure->grad_curing);
        out["exposure_grad_infection"] = numbers(exposure->grad_infection);
      }
      os << out.dump(2) << '\n';
      return;
    }
    os << "time,average_infection_rate\n";
    for (std::size_t t = 0; t < rates.size(); ++t) {
      os << t + 1 << ',' << format_double(rates[t]) << '\n';
    }
    if (grad) {
      os << "\nnode,gradient_black\n";
      for (std::size_t i = 0; i < n; ++i) {
        os << i + 1 << ',' << format_double(grad->gradient[i]) << '\n';
      }
    }
    if (exposure) {
      os << "\nexpected_exposure\n" << format_double(exposure->value) << '\n';
    }
  });
}

// ---- experiments ----------------------------------------------------------

struct RunArgs {
  std::string config;
  std::string net;
  std::vector<std::string> settings;  // key=value
  std::size_t threads = 0;
  bool threads_set = false;
  std::string trace;
  std::vector<std::string> arms;   // compare only
  std::string differences;         // compare only
  bool independent = false;        // compare only
};

enum class RunKind { kInit, kCure, kCompare };

void override_all(ExperimentPlan& plan, std::string_view key, std::string_view value) {
  apply_setting(plan.base, key, value);
  for (auto& arm : plan.arms) apply_setting(arm, key, value);
}

ExperimentPlan build_plan(const RunArgs& a, const Globals& g) {
  ExperimentPlan plan;
  if (!a.config.empty()) plan = load_experiment_plan(a.config);
  if (!a.net.empty()) override_all(plan, "network", a.net);
  for (const auto& s : a.settings) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw Error("--set expects key=value, got '" + s + "'");
    override_all(plan, s.substr(0, eq), s.substr(eq + 1));
  }
  if (g.seed) override_all(plan, "seed", std::to_string(*g.seed));
  if (g.trials) override_all(plan, "trials", std::to_string(*g.trials));
  if (g.steps) override_all(plan, "steps", std::to_string(*g.steps));
  if (a.threads_set) override_all(plan, "threads", std::to_string(a.threads));
  return plan;
}

void run_experiments(RunKind kind, const RunArgs& a, const Globals& g) {
  ExperimentPlan plan = build_plan(a, g);
  std::vector<ExperimentConfig> arms = plan.arms;
  if (kind == RunKind::kCompare && !a.arms.empty()) {
    arms.clear();
    for (const auto& text : a.arms) {
      auto spec = StrategySpec::parse(text);
      ExperimentConfig arm = plan.base;
      if (spec.family == StrategyFamily::kInit) arm.init = spec;
      else arm.cure = spec;
      arm.label = spec.to_string();
      arms.push_back(std::move(arm));
    }
  }
  if (arms.empty()) arms.push_back(plan.base);
  for (auto& arm : arms) {
    if (kind == RunKind::kInit && arm.cure) {
      throw Error("init-run: arm '" + arm.display_label() +
                  "' sets a cure strategy; use cure-run");
    }
    if (kind == RunKind::kCure && !arm.cure) {
      throw Error("cure-run: arm '" + arm.display_label() + "' has no cure strategy");
    }
  }
  if (kind == RunKind::kCompare && arms.size() < 2) {
    throw Error("compare needs at least two arms");
  }

  Network net = arms.front().network.resolve();
  if (!a.trace.empty()) arms.front().trace_first_trial = true;
  const auto format = parse_output_format(g.format);
  Comparison cmp = compare_strategies(arms, net, {.independent_streams = a.independent});

  std::vector<SummarySeries> series;
  std::size_t fallbacks = 0;
  for (const auto& r : cmp.arms) {
    series.push_back(r.series);
    fallbacks += r.policy_fallbacks;
  }
  write_output(g.out, [&](std::ostream& os) { emit(series, format, os); });
  if (!a.trace.empty() && cmp.arms.front().trace) {
    write_output(a.trace, [&](std::ostream& os) { cmp.arms.front().trace->write_csv(os); });
  }
  if (!a.differences.empty()) {
    write_output(a.differences, [&](std::ostream& os) { emit_differences_csv(cmp, os); });
  }
  if (fallbacks > 0) {
    std::cerr << "note: " << fallbacks
              << " allocations had zero weight on the target set and were split uniformly\n";
  }
}

// ---- game -----------------------------------------------------------------

struct GameArgs {
  std::string net;
  std::string red = "10";
  std::string black = "10";
  double curing_budget = 0;
  double infection_budget = 0;
  std::size_t rounds = 200;
  double tolerance = 1e-4;
};

void run_game(const GameArgs& a, const Globals& g) {
  Network net = load_any_network(a.net);
  const auto n = net.size();
  UrnState state(net, node_values(a.red, n, "--red"), node_values(a.black, n, "--black"));
  GameConfig cfg;
  cfg.max_rounds = a.rounds;
  cfg.exploitability_tolerance = a.tolerance;
  auto sol = nash_solve(state, a.curing_budget, a.infection_budget, cfg);
  const auto format = parse_output_format(g.format);
  write_output(g.out, [&](std::ostream& os) {
    if (format == OutputFormat::kCsv) {
      os << "node,curing,infection\n";
      for (std::size_t i = 0; i < n; ++i) {
        os << i + 1 << ',' << format_double(sol.curing[i]) << ','
           << format_double(sol.infection[i]) << '\n';
      }
      return;
    }
    json out;
    out["curing"] = numbers(sol.curing);
    out["infection"] = numbers(sol.infection);
    out["value"] = sol.value;
    out["exploitability"] = sol.exploitability;
    out["rounds"] = sol.rounds;
    out["converged"] = sol.converged;
    os << out.dump(2) << '\n';
  });
  std::cerr << "value " << format_double(sol.value) << ", exploitability "
            << format_double(sol.exploitability) << " after " << sol.rounds
            << " rounds\n";
}

void add_run_options(CLI::App* sub, RunArgs& a, bool compare) {
  sub->add_option("config", a.config, "Experiment file (INI)")->check(CLI::ExistingFile);
  sub->add_option("--net", a.net, "Network file, overrides the config");
  sub->add_option("--set", a.settings, "Override a config key: key=value (repeatable)");
  sub->add_option_function<std::size_t>(
      "--threads", [&a](std::size_t t) { a.threads = t, a.threads_set = true; },
      "Worker threads (0 = hardware concurrency)");
  sub->add_option("--trace", a.trace, "Write a per-node trace of trial 1 of the first arm");
  if (compare) {
    sub->add_option("--arms", a.arms, "Strategies, e.g. init:ii init:iii")->delimiter(',');
    sub->add_option("--differences", a.differences, "Write pairwise differences as CSV");
    sub->add_flag("--independent", a.independent, "Give every arm its own random stream");
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Polya network contagion simulator and policy toolkit", "polya"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--trials", g.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  app.add_option("--steps", g.steps, "Time steps")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  std::function<void()> action;

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a Barabasi-Albert network");
  gen_cmd->add_option("--nodes", gen.nodes, "Node count")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--m", gen.m, "Edges per new node")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--network-format", gen.network_format, "edges or adjacency")
      ->check(CLI::IsMember({"edges", "adjacency"}));
  gen_cmd->callback([&] { action = [&] { run_gen(gen, g); }; });

  InspectArgs inspect;
  auto* inspect_cmd = app.add_subcommand("inspect", "Node classes, centralities and target sets as JSON");
  inspect_cmd->add_option("--net", inspect.net, "Network file")->required();
  inspect_cmd->add_flag("--largest-component", inspect.largest_component,
                        "Keep the largest component of a disconnected graph");
  inspect_cmd->add_option("--automorphism", inspect.automorphism,
                          "Check a permutation given as 1-based images, e.g. 2,3,4,1");
  inspect_cmd->callback([&] { action = [&] { run_inspect(inspect, g); }; });

  ExactArgs exact;
  auto* exact_cmd = app.add_subcommand("exact", "Exact average infection rate by enumeration");
  exact_cmd->add_option("--net", exact.net, "Network file")->required();
  exact_cmd->add_option("--n", exact.n, "Last time step")->check(CLI::PositiveNumber);
  exact_cmd->add_option("--red", exact.red, "Initial red balls (one value or one per node)");
  exact_cmd->add_option("--black", exact.black, "Initial black balls");
  exact_cmd->add_option("--delta-red", exact.delta_red, "Red reinforcement per step");
  exact_cmd->add_option("--delta-black", exact.delta_black, "Black reinforcement per step");
  exact_cmd->add_flag("--gradient", exact.gradient, "Also print the time-1 gradient in the black initialization");
  exact_cmd->add_option("--curing", exact.curing, "Curing step for the one-step expected exposure");
  exact_cmd->add_option("--infection", exact.infection, "Infection step for the expected exposure");
  exact_cmd->callback([&] { action = [&] { run_exact(exact, g); }; });

  RunArgs init_run, cure_run, compare;
  auto* init_cmd = app.add_subcommand("init-run", "Run an initialization experiment");
  add_run_options(init_cmd, init_run, false);
  init_cmd->callback([&] { action = [&] { run_experiments(RunKind::kInit, init_run, g); }; });
  auto* cure_cmd = app.add_subcommand("cure-run", "Run a curing experiment");
  add_run_options(cure_cmd, cure_run, false);
  cure_cmd->callback([&] { action = [&] { run_experiments(RunKind::kCure, cure_run, g); }; });
  auto* compare_cmd = app.add_subcommand("compare", "Run several arms on common random numbers");
  add_run_options(compare_cmd, compare, true);
  compare_cmd->callback([&] { action = [&] { run_experiments(RunKind::kCompare, compare, g); }; });

  GameArgs game;
  auto* game_cmd = app.add_subcommand("game", "Solve the one-step curing/infection game");
  game_cmd->add_option("--net", game.net, "Network file")->required();
  game_cmd->add_option("--red", game.red, "Current red balls (one value or one per node)");
  game_cmd->add_option("--black", game.black, "Current black balls");
  game_cmd->add_option("--curing-budget", game.curing_budget, "Curing budget")->required();
  game_cmd->add_option("--infection-budget", game.infection_budget, "Infection budget")->required();
  game_cmd->add_option("--rounds", game.rounds, "Maximum rounds");
  game_cmd->add_option("--tolerance", game.tolerance, "Target exploitability");
  game_cmd->callback([&] { action = [&] { run_game(game, g); }; });

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  app.footer("Experiment keys: " + [] {
    std::string s;
    for (const auto& k : experiment_keys()) s += (s.empty() ? "" : ", ") + k;
    return s;
  }());

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  try {
    action();
  } catch (const std::exception& e) {
    std::cerr << "polya: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
