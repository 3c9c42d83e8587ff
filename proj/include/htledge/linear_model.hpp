#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "htledge/dataset.hpp"

namespace htledge {

/// One-vs-rest linear classifier: one weight row per class, last column is the bias.
struct LinearModel {
  Eigen::MatrixXd weights;  // K x (d+1)

  int num_classes() const { return static_cast<int>(weights.rows()); }
  int feature_dim() const { return static_cast<int>(weights.cols()) - 1; }
};

/// Per-class decision scores for a batch of observations (n x K).
Eigen::MatrixXd decision_scores(const LinearModel& m, const Eigen::MatrixXd& x);

/// Argmax over class scores; ties break toward the lowest class id.
int predict(const LinearModel& m, const Eigen::VectorXd& x);
Eigen::VectorXi predict_all(const LinearModel& m, const Eigen::MatrixXd& x);

/// Elementwise mean of the weight matrices. All models must share (K, d).
LinearModel average_models(const std::vector<LinearModel>& models);

/// Wire format: 16-byte header (8-byte magic, u32 K, u32 d, little-endian),
/// then K x (d+1) doubles, row-major little-endian.
std::vector<std::uint8_t> serialize(const LinearModel& m);
LinearModel deserialize(const std::vector<std::uint8_t>& bytes);

}  // namespace htledge
