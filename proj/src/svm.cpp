#include "htledge/svm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace htledge {

LinearModel train_base(const Dataset& data, const BaseTrainerConfig& cfg) {
  if (data.empty()) throw std::domain_error("train_base: empty dataset");
  if (cfg.lambda_svm <= 0.0) throw std::domain_error("train_base: lambda_svm must be > 0");
  if (cfg.epochs < 1) throw std::domain_error("train_base: epochs must be >= 1");

  const int k = data.num_classes;
  const auto d = data.dim();
  const auto n = data.size();

  LinearModel model;
  model.weights = Eigen::MatrixXd::Zero(k, d + 1);

  // Single-class data: constant scores favoring the present class.
  int first_label = data.y(0);
  if ((data.y.array() == first_label).all()) {
    model.weights(first_label, d) = 1.0;
    return model;
  }

  // Column-per-observation layout with the bias feature appended.
  Eigen::MatrixXd xt(d + 1, n);
  xt.topRows(d) = data.x.transpose();
  xt.row(d).setOnes();

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  for (int c = 0; c < k; ++c) {
    Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(c)));
    Eigen::VectorXd target(n);
    for (Eigen::Index i = 0; i < n; ++i) target(i) = data.y(i) == c ? 1.0 : -1.0;

    // w is kept as scale * v; the 1/(lambda t) schedule makes scale = 1/t.
    Eigen::VectorXd v = Eigen::VectorXd::Zero(d + 1);
    double scale = 1.0;
    long t = 0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      for (int i : order) {
        ++t;
        const double eta = 1.0 / (cfg.lambda_svm * static_cast<double>(t));
        const double decay = 1.0 - eta * cfg.lambda_svm;  // = 1 - 1/t
        const double margin = target(i) * scale * v.dot(xt.col(i));
        if (decay == 0.0) {
          v.setZero();
          scale = 1.0;
        } else {
          scale *= decay;
        }
        if (margin < 1.0) {
          v += (eta * target(i) / scale) * xt.col(i);
        }
      }
    }
    model.weights.row(c) = (scale * v).transpose();
  }
  return model;
}

double hinge_objective(const LinearModel& m, const Dataset& data, double lambda) {
  if (data.empty()) throw std::domain_error("hinge_objective: empty dataset");
  const Eigen::MatrixXd scores = decision_scores(m, data.x);
  const auto n = data.size();
  double total = 0.0;
  for (int c = 0; c < m.num_classes(); ++c) {
    double hinge = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double t = data.y(i) == c ? 1.0 : -1.0;
      hinge += std::max(0.0, 1.0 - t * scores(i, c));
    }
    total += 0.5 * lambda * m.weights.row(c).squaredNorm() + hinge / static_cast<double>(n);
  }
  return total;
}

}  // namespace htledge
