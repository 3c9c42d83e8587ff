#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "htledge/greedy_tl.hpp"
#include "htledge/scenario.hpp"
#include "htledge/svm.hpp"

namespace htledge {

struct ExperimentConfig {
  ScenarioConfig scenario;
  BaseTrainerConfig base;
  GreedyTLConfig gtl;
  std::string dataset_path;
  std::string output_dir;
  std::uint64_t seed = 42;
  int replications = 10;
  double train_fraction = 0.8;
  int balance_total = 19229;
  bool emit_messages = false;
};

/// Canned configurations, one per studied scenario.
std::vector<std::string> list_presets();
ExperimentConfig preset_config(const std::string& name);

/// Flat key-value configuration: one `dotted.key = value` per line,
/// `#` comments and blank lines ignored. Unknown keys are an error.
void apply_config_file(ExperimentConfig& cfg, const std::string& path);
void apply_key_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

}  // namespace htledge
