#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "htledge/dataset.hpp"
#include "htledge/energy.hpp"
#include "htledge/greedy_tl.hpp"
#include "htledge/linear_model.hpp"
#include "htledge/scenario.hpp"
#include "htledge/svm.hpp"

namespace htledge {

/// A node holding raw data for one window: a mule or the edge server.
struct Collector {
  int id = 0;
  NodeKind kind = NodeKind::Mule;
  Dataset local;
};

struct LearningConfigs {
  BaseTrainerConfig base;
  GreedyTLConfig gtl;
};

/// Cross-window simulation state owned by the driver.
struct WindowState {
  int window_index = 0;
  std::optional<LinearModel> previous_global_model;
  Dataset edge_accumulated;  // EdgeOnly / partial-edge configurations only
};

struct WindowResult {
  LinearModel model;
  std::vector<MessageRecord> messages;
  EnergyLedger delta;
  int participants = 0;
  std::int64_t traffic_bits = 0;
};

/// Benchmark window: the whole batch goes to the edge over NB-IoT and the
/// base learner is retrained from scratch on everything accumulated so far.
WindowResult run_edge_only(WindowState& state, const Dataset& batch, const LearningConfigs& cfgs,
                           std::uint64_t window_seed);

/// All-to-all HTL round over the given collectors (empty ones do not
/// participate). Pre-made data migrations are charged on the learning link.
WindowResult run_a2ahtl(WindowState& state, const std::vector<Collector>& collectors,
                        const std::vector<Migration>& migrations, const LearningConfigs& cfgs,
                        Tech learning_tech, std::uint64_t window_seed);

/// Star HTL round: entropy election picks the center, which alone re-trains.
WindowResult run_shtl(WindowState& state, const std::vector<Collector>& collectors,
                      const std::vector<Migration>& migrations, const LearningConfigs& cfgs,
                      Tech learning_tech, std::uint64_t window_seed);

/// Scenario driver for the no-edge configurations: draws the mule population,
/// allocates the batch, optionally aggregates, charges collection traffic and
/// runs the configured HTL round.
WindowResult run_no_edge(WindowState& state, const Dataset& batch, const ScenarioConfig& sc,
                         const LearningConfigs& cfgs, Rng& rng, std::uint64_t window_seed);

/// Scenario driver for partial-edge collection: Bernoulli-routes each
/// observation to the edge (NB-IoT) or the mule pool (802.15.4), then runs
/// SHTL over mules plus the edge server as one additional collector.
WindowResult run_partial_edge(WindowState& state, const Dataset& batch, double edge_fraction,
                              const ScenarioConfig& sc, const LearningConfigs& cfgs, Rng& rng,
                              std::uint64_t window_seed);

}  // namespace htledge
