#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "htledge/config.hpp"
#include "htledge/dataset.hpp"
#include "htledge/energy.hpp"
#include "htledge/metrics.hpp"

namespace htledge {

/// One seeded simulation run: per-window evaluation and energy records.
struct ReplicationOutput {
  std::vector<EvaluationResult> windows;
  std::vector<EnergyLedger> window_deltas;
  std::vector<int> participants;
  std::vector<std::int64_t> traffic_bits;
  EnergyLedger totals;
  std::vector<MessageRecord> messages;  // kept only when requested
};

/// Replication seeds are cfg.seed + rep_index.
ReplicationOutput run_replication(const Dataset& raw, const ExperimentConfig& cfg, int rep_index,
                                  bool keep_messages);

struct ExperimentResult {
  SeriesSummary f1;
  SeriesSummary precision;
  SeriesSummary recall;
  SeriesSummary collection_short_mj;
  SeriesSummary collection_long_mj;
  SeriesSummary learning_tx_mj;
  SeriesSummary learning_rx_mj;
  SeriesSummary participants;
  SeriesSummary traffic_bits;

  EnergyLedger mean_totals;
  double total_mj_mean = 0.0;
  double total_mj_half_width = 0.0;
  double convergence_f1_mean = 0.0;
  double convergence_f1_half_width = 0.0;
  double mean_participants = 0.0;
  double mean_traffic_bits = 0.0;

  std::vector<ReplicationOutput> replications;  // messages dropped unless requested
};

/// Loads the dataset, runs all replications (concurrently; results are
/// independent of scheduling) and aggregates. Does not touch the output dir.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Same, with the raw dataset already in memory.
ExperimentResult run_experiment_on(const Dataset& raw, const ExperimentConfig& cfg);

/// Writes windows.csv, summary.json and (optionally) per-replication
/// messages_rep<k>.csv into cfg.output_dir. baseline_summary_path, when
/// non-empty, points at an EdgeOnly summary.json used to embed gain figures.
void write_artifacts(const ExperimentResult& result, const ExperimentConfig& cfg,
                     const std::string& baseline_summary_path = "");

struct GainReport {
  double gain_percent = 0.0;
  double accuracy_loss_pp = 0.0;
};

/// gain% = (E_a - E_b) / E_a * 100; loss = (f1_a - f1_b) in percentage points.
GainReport compare_summaries(double energy_a_mj, double f1_a, double energy_b_mj, double f1_b);

}  // namespace htledge
