#include "htledge/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace htledge {

namespace {

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// Continued-fraction evaluation of the regularized incomplete beta function.
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;
  double qab = a + b;
  double qap = a + 1.0;
  double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front = std::exp(a * std::log(x) + b * std::log(1.0 - x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

}  // namespace

double student_t_quantile(double p, int df) {
  if (df < 1) throw std::domain_error("student_t_quantile: df must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("student_t_quantile: p must be in (0, 1)");
  if (p == 0.5) return 0.0;
  const bool upper = p > 0.5;
  const double tail = upper ? 2.0 * (1.0 - p) : 2.0 * p;
  // For t >= 0: P(T > t) = I_x(df/2, 1/2) / 2 with x = df / (df + t^2).
  // Bisect on x for I_x(df/2, 1/2) = tail (monotone increasing in x).
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (incomplete_beta(0.5 * df, 0.5, mid) < tail) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double x = 0.5 * (lo + hi);
  const double t = std::sqrt(df * (1.0 - x) / x);
  return upper ? t : -t;
}

EvaluationResult evaluate_predictions(const Eigen::VectorXi& truth, const Eigen::VectorXi& predicted,
                                      int num_classes, int window_index) {
  if (truth.size() == 0 || truth.size() != predicted.size()) {
    throw std::domain_error("evaluate_predictions: empty or mismatched inputs");
  }
  const auto n = truth.size();
  double correct = 0.0;
  std::vector<double> class_total(static_cast<std::size_t>(num_classes), 0.0);
  std::vector<double> class_correct(static_cast<std::size_t>(num_classes), 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    class_total[static_cast<std::size_t>(truth(i))] += 1.0;
    if (truth(i) == predicted(i)) {
      correct += 1.0;
      class_correct[static_cast<std::size_t>(truth(i))] += 1.0;
    }
  }
  EvaluationResult r;
  r.window_index = window_index;
  r.precision = correct / static_cast<double>(n);
  double sum = 0.0;
  int present = 0;
  for (int c = 0; c < num_classes; ++c) {
    if (class_total[static_cast<std::size_t>(c)] > 0.0) {
      sum += class_correct[static_cast<std::size_t>(c)] / class_total[static_cast<std::size_t>(c)];
      ++present;
    }
  }
  r.recall = present > 0 ? sum / present : 0.0;
  r.f_measure = f_measure(r.precision, r.recall);
  return r;
}

double precision(const LinearModel& m, const Dataset& test) {
  if (test.empty()) throw std::domain_error("precision: empty test set");
  return evaluate_predictions(test.y, predict_all(m, test.x), test.num_classes).precision;
}

double recall(const LinearModel& m, const Dataset& test) {
  if (test.empty()) throw std::domain_error("recall: empty test set");
  return evaluate_predictions(test.y, predict_all(m, test.x), test.num_classes).recall;
}

double f_measure(double p, double r) {
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

EvaluationResult evaluate(const LinearModel& m, const Dataset& test, int window_index) {
  if (test.empty()) throw std::domain_error("evaluate: empty test set");
  return evaluate_predictions(test.y, predict_all(m, test.x), test.num_classes, window_index);
}

double convergence_loss(const std::vector<double>& run_f1,
                        const std::vector<double>& benchmark_f1) {
  if (run_f1.size() < 100 || benchmark_f1.size() < 100) {
    throw std::domain_error("convergence_loss: series must cover 100 windows");
  }
  double run_sum = 0.0;
  double bench_sum = 0.0;
  for (int i = 49; i <= 99; ++i) {  // windows 50..100, 1-based
    run_sum += run_f1[static_cast<std::size_t>(i)];
    bench_sum += benchmark_f1[static_cast<std::size_t>(i)];
  }
  return (bench_sum - run_sum) / 51.0 * 100.0;
}

SeriesSummary replication_summary(const std::vector<std::vector<double>>& series,
                                  double confidence) {
  if (series.size() < 2) throw std::domain_error("replication_summary: need >= 2 replications");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::domain_error("replication_summary: confidence must be in (0, 1)");
  }
  const std::size_t reps = series.size();
  const std::size_t len = series.front().size();
  for (const auto& s : series) {
    if (s.size() != len) throw std::domain_error("replication_summary: ragged series");
  }
  const double t_crit =
      student_t_quantile(1.0 - 0.5 * (1.0 - confidence), static_cast<int>(reps) - 1);
  SeriesSummary out;
  out.mean.resize(len);
  out.half_width.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    double mean = 0.0;
    for (const auto& s : series) mean += s[i];
    mean /= static_cast<double>(reps);
    double ss = 0.0;
    for (const auto& s : series) ss += (s[i] - mean) * (s[i] - mean);
    const double sd = std::sqrt(ss / static_cast<double>(reps - 1));
    out.mean[i] = mean;
    out.half_width[i] = t_crit * sd / std::sqrt(static_cast<double>(reps));
  }
  return out;
}

}  // namespace htledge
