#pragma once

#include <vector>

#include "htledge/dataset.hpp"
#include "htledge/linear_model.hpp"

namespace htledge {

struct EvaluationResult {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  int window_index = 0;
};

/// Overall correct-prediction fraction. (The source formulation names this
/// "precision"; the formula is what is implemented.)
double precision(const LinearModel& m, const Dataset& test);

/// Per-class correct fraction averaged over the classes present (macro recall).
double recall(const LinearModel& m, const Dataset& test);

/// Harmonic mean of p and r; 0 when p + r == 0.
double f_measure(double p, double r);

EvaluationResult evaluate(const LinearModel& m, const Dataset& test, int window_index = 0);

/// Same metrics computed from already-made predictions.
EvaluationResult evaluate_predictions(const Eigen::VectorXi& truth, const Eigen::VectorXi& predicted,
                                      int num_classes, int window_index = 0);

/// Convergence-interval loss in percentage points: windows 50..100 of a
/// 1-based 100-window series (0-based indices 49..99), benchmark minus run.
double convergence_loss(const std::vector<double>& run_f1, const std::vector<double>& benchmark_f1);

struct SeriesSummary {
  std::vector<double> mean;
  std::vector<double> half_width;  // Student-t interval half-width
};

/// Per-index mean and Student-t confidence half-width across replications.
SeriesSummary replication_summary(const std::vector<std::vector<double>>& series, double confidence);

/// Two-sided Student-t critical value: quantile at p for `df` degrees of freedom.
double student_t_quantile(double p, int df);

}  // namespace htledge
