#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "polya/experiment.hpp"

namespace polya {

// Experiment description read from an INI-style file:
//
//   # top-level keys form the template shared by all arms
//   network = ba100.edges
//   steps = 50
//   trials = 1000
//   init_black_budget = 10N
//   init_red_budget = 10N
//   delta_red = 5
//   delta_black = 5
//
//   [uniform]          # one section per arm; keys override the template
//   init = ii
//   [inner]
//   init = iii
//
// Relative network paths resolve against the file's directory.
struct ExperimentPlan {
  ExperimentConfig base;
  std::vector<ExperimentConfig> arms;  // empty when the file has no sections
};

ExperimentPlan load_experiment_plan(const std::filesystem::path& path);
ExperimentPlan parse_experiment_plan(std::string_view text,
                                     const std::filesystem::path& base_dir = {});

// Sets one key on `cfg`; throws polya::Error for unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, std::string_view key,
                   std::string_view value,
                   const std::filesystem::path& base_dir = {});

// Keys understood by apply_setting, for usage text.
const std::vector<std::string>& experiment_keys();

}  // namespace polya
