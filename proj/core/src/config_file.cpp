#include "polya/config_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "polya/error.hpp"

namespace polya {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// The ini parser only knows whole-line comments.
std::string strip_inline_comments(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    for (std::size_t k = 0; k < line.size(); ++k) {
      if ((line[k] == '#' || line[k] == ';') &&
          (k == 0 || line[k - 1] == ' ' || line[k - 1] == '\t')) {
        line.resize(k);
        break;
      }
    }
    out << trim(line) << '\n';
  }
  return out.str();
}

template <typename T>
T parse_integer(std::string_view key, std::string_view value) {
  T v{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
    throw Error("'" + std::string(key) + "' expects a nonnegative integer, got '" +
                std::string(value) + "'");
  }
  return v;
}

double parse_real(std::string_view key, std::string_view value) {
  double v{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size() ||
      !(v >= 0.0)) {
    throw Error("'" + std::string(key) + "' expects a nonnegative number, got '" +
                std::string(value) + "'");
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error("'" + std::string(key) + "' expects true or false");
}

void apply_tree(ExperimentConfig& cfg, const boost::property_tree::ptree& tree,
                const std::filesystem::path& base_dir) {
  for (const auto& [key, node] : tree) {
    if (!node.empty()) continue;  // a section, handled by the caller
    apply_setting(cfg, key, node.data(), base_dir);
  }
}

StrategySpec parse_in_family(std::string_view key, std::string_view value,
                             StrategyFamily family) {
  auto spec = StrategySpec::parse(value, family);
  if (spec.family != family) {
    throw Error(std::string(key) + ": strategy '" + std::string(value) +
                "' belongs to the other family");
  }
  return spec;
}

}  // namespace

const std::vector<std::string>& experiment_keys() {
  static const std::vector<std::string> keys = {
      "label",          "network",           "network_format",
      "largest_component", "ba_nodes",       "ba_m",
      "ba_seed",        "init",              "init_black_budget",
      "init_red_budget", "cure",             "cure_black_budget",
      "cure_red_budget", "delta_black",      "delta_red",
      "steps",          "trials",            "seed",
      "threads"};
  return keys;
}

void apply_setting(ExperimentConfig& cfg, std::string_view key,
                   std::string_view raw, const std::filesystem::path& base_dir) {
  const std::string value = trim(raw);
  if (key == "label") {
    cfg.label = value;
  } else if (key == "network") {
    std::filesystem::path p(value);
    cfg.network.path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  } else if (key == "network_format") {
    if (value == "auto") cfg.network.load.format = NetworkFormat::kAuto;
    else if (value == "adjacency") cfg.network.load.format = NetworkFormat::kAdjacencyMatrix;
    else if (value == "edges") cfg.network.load.format = NetworkFormat::kEdgeList;
    else throw Error("network_format must be auto, adjacency or edges");
  } else if (key == "largest_component") {
    cfg.network.load.largest_component = parse_bool(key, value);
  } else if (key == "ba_nodes") {
    cfg.network.ba_nodes = parse_integer<std::size_t>(key, value);
  } else if (key == "ba_m") {
    cfg.network.ba_m = parse_integer<std::size_t>(key, value);
  } else if (key == "ba_seed") {
    cfg.network.ba_seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "init") {
    cfg.init = parse_in_family(key, value, StrategyFamily::kInit);
  } else if (key == "init_black_budget") {
    cfg.init_black_budget = Amount::parse(value);
  } else if (key == "init_red_budget") {
    cfg.init_red_budget = Amount::parse(value);
  } else if (key == "cure") {
    if (value == "none") cfg.cure.reset();
    else cfg.cure = parse_in_family(key, value, StrategyFamily::kCure);
  } else if (key == "cure_black_budget") {
    cfg.cure_black_budget = Amount::parse(value);
  } else if (key == "cure_red_budget") {
    cfg.cure_red_budget = Amount::parse(value);
  } else if (key == "delta_black") {
    cfg.delta_black = parse_real(key, value);
  } else if (key == "delta_red") {
    cfg.delta_red = parse_real(key, value);
  } else if (key == "steps") {
    cfg.steps = parse_integer<std::size_t>(key, value);
  } else if (key == "trials") {
    cfg.trials = parse_integer<std::size_t>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "threads") {
    cfg.threads = parse_integer<std::size_t>(key, value);
  } else {
    throw Error("unknown experiment key '" + std::string(key) + "'");
  }
}

ExperimentPlan parse_experiment_plan(std::string_view text,
                                     const std::filesystem::path& base_dir) {
  boost::property_tree::ptree tree;
  std::istringstream in(strip_inline_comments(text));
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError("experiment file: " + e.message() + " (line " +
                     std::to_string(e.line()) + ")");
  }
  ExperimentPlan plan;
  apply_tree(plan.base, tree, base_dir);
  for (const auto& [name, node] : tree) {
    if (node.empty()) continue;
    ExperimentConfig arm = plan.base;
    arm.label = name;
    apply_tree(arm, node, base_dir);
    plan.arms.push_back(std::move(arm));
  }
  return plan;
}

ExperimentPlan load_experiment_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open experiment file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_experiment_plan(text.str(), path.parent_path());
}

}  // namespace polya
