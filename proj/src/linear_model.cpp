#include "htledge/linear_model.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

namespace htledge {

static_assert(std::endian::native == std::endian::little,
              "model wire format assumes a little-endian host");

namespace {
constexpr char kMagic[8] = {'H', 'T', 'L', 'M', 'O', 'D', 'L', '1'};
}

Eigen::MatrixXd decision_scores(const LinearModel& m, const Eigen::MatrixXd& x) {
  if (x.cols() != m.feature_dim()) {
    throw std::domain_error("decision_scores: feature dimension mismatch");
  }
  const int d = m.feature_dim();
  Eigen::MatrixXd scores = x * m.weights.leftCols(d).transpose();
  scores.rowwise() += m.weights.col(d).transpose();
  return scores;
}

int predict(const LinearModel& m, const Eigen::VectorXd& x) {
  if (x.size() != m.feature_dim()) {
    throw std::domain_error("predict: feature dimension mismatch");
  }
  const int d = m.feature_dim();
  const Eigen::VectorXd scores = m.weights.leftCols(d) * x + m.weights.col(d);
  int best = 0;
  for (int c = 1; c < m.num_classes(); ++c) {
    if (scores(c) > scores(best)) best = c;  // ties keep the lowest class id
  }
  return best;
}

Eigen::VectorXi predict_all(const LinearModel& m, const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd scores = decision_scores(m, x);
  Eigen::VectorXi out(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    int best = 0;
    for (int c = 1; c < m.num_classes(); ++c) {
      if (scores(i, c) > scores(i, best)) best = c;
    }
    out(i) = best;
  }
  return out;
}

LinearModel average_models(const std::vector<LinearModel>& models) {
  if (models.empty()) throw std::domain_error("average_models: empty model list");
  const auto rows = models.front().weights.rows();
  const auto cols = models.front().weights.cols();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(rows, cols);
  for (const auto& m : models) {
    if (m.weights.rows() != rows || m.weights.cols() != cols) {
      throw std::domain_error("average_models: model shape mismatch");
    }
    sum += m.weights;
  }
  return LinearModel{sum / static_cast<double>(models.size())};
}

std::vector<std::uint8_t> serialize(const LinearModel& m) {
  const auto k = static_cast<std::uint32_t>(m.weights.rows());
  const auto dp1 = static_cast<std::uint32_t>(m.weights.cols());
  std::vector<std::uint8_t> bytes(16 + static_cast<std::size_t>(k) * dp1 * 8);
  std::memcpy(bytes.data(), kMagic, 8);
  const std::uint32_t d = dp1 - 1;
  std::memcpy(bytes.data() + 8, &k, 4);
  std::memcpy(bytes.data() + 12, &d, 4);
  std::size_t off = 16;
  for (std::uint32_t r = 0; r < k; ++r) {
    for (std::uint32_t c = 0; c < dp1; ++c) {
      const double v = m.weights(r, c);
      std::memcpy(bytes.data() + off, &v, 8);
      off += 8;
    }
  }
  return bytes;
}

LinearModel deserialize(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), kMagic, 8) != 0) {
    throw std::domain_error("deserialize: bad model header");
  }
  std::uint32_t k = 0;
  std::uint32_t d = 0;
  std::memcpy(&k, bytes.data() + 8, 4);
  std::memcpy(&d, bytes.data() + 12, 4);
  const std::size_t expected = 16 + static_cast<std::size_t>(k) * (d + 1) * 8;
  if (bytes.size() != expected) {
    throw std::domain_error("deserialize: payload size mismatch");
  }
  LinearModel m;
  m.weights.resize(k, d + 1);
  std::size_t off = 16;
  for (std::uint32_t r = 0; r < k; ++r) {
    for (std::uint32_t c = 0; c <= d; ++c) {
      double v = 0;
      std::memcpy(&v, bytes.data() + off, 8);
      m.weights(r, c) = v;
      off += 8;
    }
  }
  return m;
}

}  // namespace htledge
