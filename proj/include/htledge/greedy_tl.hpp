#pragma once

#include <cstdint>
#include <vector>

#include "htledge/dataset.hpp"
#include "htledge/linear_model.hpp"

namespace htledge {

struct GreedyTLConfig {
  int budget = -1;           // max selected atoms; <0 means d + number of sources
  double lambda_tl = 1.0;    // ridge regularization
  int per_class_sample = 0;  // >0: subsample that many points per class first
  std::uint64_t seed = 0;    // drives the per-class subsampling
};

/// Selection trace for one greedy_tl run. Atom ids: 0..d-1 are raw features,
/// d+s is source s. `risk` holds the total regularized risk after each
/// accepted step; risk is non-increasing by construction.
struct GreedyTLTrace {
  double initial_risk = 0.0;
  std::vector<int> selected;
  std::vector<double> risk;
};

/// Transfer-learning re-training: forward-greedy ridge regression over the
/// atom set {raw features} ∪ {source-hypothesis outputs}, against ±1
/// one-vs-rest targets, then collapsed back to a plain linear model over the
/// raw features. Atoms are selected jointly across the K per-class problems;
/// ties break toward the lowest atom index. With no sources this degenerates
/// to ridge regression on the raw features.
LinearModel greedy_tl(const Dataset& data, const std::vector<LinearModel>& sources,
                      const GreedyTLConfig& cfg, GreedyTLTrace* trace = nullptr);

/// min(n, available) points per class, uniform without replacement.
Dataset subsample_per_class(const Dataset& d, int n, Rng& rng);

/// Label-distribution entropy with logarithm base num_classes, in [0, 1].
/// Empty datasets score 0.
double entropy(const Dataset& d, int num_classes);

}  // namespace htledge
