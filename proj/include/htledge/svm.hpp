#pragma once

#include <cstdint>

#include "htledge/dataset.hpp"
#include "htledge/linear_model.hpp"

namespace htledge {

struct BaseTrainerConfig {
  double lambda_svm = 1e-4;  // L2 regularization strength
  int epochs = 20;
  std::uint64_t seed = 0;
};

/// One-vs-rest L2-regularized hinge-loss classifier, trained per class by
/// stochastic subgradient descent with step size 1/(lambda * t). The bias is
/// carried as an appended constant-1 feature and regularized with the rest.
/// Deterministic given cfg.seed. A dataset holding a single class yields a
/// constant-score model favoring that class.
LinearModel train_base(const Dataset& data, const BaseTrainerConfig& cfg);

/// Training objective the trainer minimizes, summed over the K one-vs-rest
/// problems: lambda/2 ||w_c||^2 + mean hinge loss on augmented inputs.
double hinge_objective(const LinearModel& m, const Dataset& data, double lambda);

}  // namespace htledge
