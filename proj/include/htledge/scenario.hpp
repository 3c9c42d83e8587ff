#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "htledge/dataset.hpp"
#include "htledge/energy.hpp"

namespace htledge {

enum class Allocation { Zipf, Uniform };
enum class ProtocolKind { EdgeOnly, A2AHTL, SHTL };

struct ScenarioConfig {
  int windows = 100;
  int obs_per_window = 100;
  double lambda = 7.0;  // Poisson rate of mules per window
  Allocation allocation = Allocation::Zipf;
  double zipf_alpha = 1.5;
  double edge_fraction = 0.0;
  bool aggregation_enabled = false;
  ProtocolKind protocol = ProtocolKind::EdgeOnly;
  Tech learning_tech = Tech::FourG;
  int gtl_per_class_sample = 0;  // 0: GreedyTL uses all local data
};

/// Poisson(lambda) sample resampled until >= 1.
int draw_mule_count(Rng& rng, double lambda);

/// p_r = r^-alpha / sum_{s=1..n} s^-alpha for ranks 1..n.
Eigen::VectorXd zipf_probabilities(int n, double alpha);

/// Assigns each observation independently to one of n_mules partitions,
/// by Zipf rank probability or uniformly. Empty partitions are permitted.
std::vector<Dataset> allocate(const Dataset& batch, int n_mules, Allocation mode, double alpha,
                              Rng& rng);

/// Routes each observation to the edge with probability edge_fraction.
/// Returns (edge share, mule share).
std::pair<Dataset, Dataset> route_edge_fraction(const Dataset& batch, double edge_fraction,
                                                Rng& rng);

struct Migration {
  int src = 0;
  int dst = 0;
  std::int64_t bits = 0;
  int observations = 0;
};

/// Merges mules whose payload (observation_bits x count) is below twice the
/// model wire size: repeatedly the smallest under-threshold mule empties into
/// the largest under-threshold one; a final lone under-threshold mule merges
/// into the smallest over-threshold mule. Ties break toward the lowest id.
/// Every move is appended to `log` for energy accounting.
std::vector<Dataset> aggregation_heuristic(std::vector<Dataset> partitions,
                                           std::int64_t model_wire_bits,
                                           std::vector<Migration>* log = nullptr);

}  // namespace htledge
