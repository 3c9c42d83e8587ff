#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "htledge/common.hpp"

namespace htledge {

/// Labeled observations. One row of `x` per observation, labels in 0..num_classes-1.
struct Dataset {
  Eigen::MatrixXd x;  // n x d
  Eigen::VectorXi y;  // n
  int num_classes = 0;

  Eigen::Index size() const { return x.rows(); }
  Eigen::Index dim() const { return x.cols(); }
  bool empty() const { return x.rows() == 0; }
};

/// Per-feature train-split statistics used for z-scoring.
struct StandardizationStats {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;  // 0 marks a constant feature; such columns map to 0
};

/// Parses the UCI Covertype layout: one observation per line, 55 comma-separated
/// integers (54 features, then a label in 1..7). Labels are remapped to 0..6.
Dataset load_covtype(const std::string& path);

/// Inverse of load_covtype for integer-valued datasets (writes labels back as 1..7).
void write_covtype_csv(const Dataset& d, const std::string& path);

/// Subsamples every class without replacement to min(smallest class, total_target / K)
/// members and shuffles the result. Errors if any class id 0..K-1 is absent.
Dataset balance_classes(const Dataset& d, Rng& rng, int total_target = 19229);

/// Stratified-by-class split; per-class train size is round(fraction * count).
std::pair<Dataset, Dataset> split(const Dataset& d, double train_fraction, Rng& rng);

/// Draws windows * obs_per_window distinct observations and chunks them into
/// `windows` disjoint batches of exactly obs_per_window each.
std::vector<Dataset> window_stream(const Dataset& train, int obs_per_window, int windows,
                                   Rng& rng);

/// Z-scores both splits in place with statistics computed on the training split.
StandardizationStats standardize(Dataset& train, Dataset& test);

std::vector<int> class_histogram(const Dataset& d);
Dataset take_rows(const Dataset& d, const std::vector<int>& rows);
Dataset concat(const Dataset& a, const Dataset& b);

}  // namespace htledge
