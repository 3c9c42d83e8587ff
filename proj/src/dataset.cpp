#include "htledge/dataset.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>

namespace htledge {

namespace {

constexpr int kCovTypeFeatures = 54;
constexpr int kCovTypeClasses = 7;

std::vector<int> shuffled_indices(Eigen::Index n, Rng& rng) {
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  return idx;
}

}  // namespace

Dataset load_covtype(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset file: " + path);

  std::vector<double> values;
  std::vector<int> labels;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const char* p = line.c_str();
    for (int field = 0; field <= kCovTypeFeatures; ++field) {
      char* end = nullptr;
      long v = std::strtol(p, &end, 10);
      if (end == p) {
        throw ParseError("line " + std::to_string(line_no) + ": field " +
                         std::to_string(field + 1) + " is not an integer");
      }
      p = end;
      if (field < kCovTypeFeatures) {
        if (*p != ',') {
          throw ParseError("line " + std::to_string(line_no) + ": expected " +
                           std::to_string(kCovTypeFeatures + 1) + " comma-separated fields");
        }
        ++p;
        values.push_back(static_cast<double>(v));
      } else {
        if (*p != '\0' && *p != '\r') {
          throw ParseError("line " + std::to_string(line_no) + ": trailing data after label");
        }
        if (v < 1 || v > kCovTypeClasses) {
          throw std::domain_error("line " + std::to_string(line_no) + ": label " +
                                  std::to_string(v) + " outside 1.." +
                                  std::to_string(kCovTypeClasses));
        }
        labels.push_back(static_cast<int>(v) - 1);
      }
    }
  }

  Dataset d;
  const Eigen::Index n = static_cast<Eigen::Index>(labels.size());
  d.x.resize(n, kCovTypeFeatures);
  d.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int j = 0; j < kCovTypeFeatures; ++j) {
      d.x(i, j) = values[static_cast<std::size_t>(i) * kCovTypeFeatures + j];
    }
    d.y(i) = labels[static_cast<std::size_t>(i)];
  }
  d.num_classes = kCovTypeClasses;
  return d;
}

void write_covtype_csv(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write dataset file: " + path);
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    for (Eigen::Index j = 0; j < d.dim(); ++j) {
      out << static_cast<long long>(std::llround(d.x(i, j))) << ',';
    }
    out << d.y(i) + 1 << '\n';
  }
}

std::vector<int> class_histogram(const Dataset& d) {
  std::vector<int> counts(static_cast<std::size_t>(d.num_classes), 0);
  for (Eigen::Index i = 0; i < d.size(); ++i) ++counts[static_cast<std::size_t>(d.y(i))];
  return counts;
}

Dataset take_rows(const Dataset& d, const std::vector<int>& rows) {
  Dataset out;
  out.num_classes = d.num_classes;
  out.x.resize(static_cast<Eigen::Index>(rows.size()), d.dim());
  out.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.x.row(static_cast<Eigen::Index>(i)) = d.x.row(rows[i]);
    out.y(static_cast<Eigen::Index>(i)) = d.y(rows[i]);
  }
  return out;
}

Dataset concat(const Dataset& a, const Dataset& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.dim() != b.dim()) throw std::domain_error("concat: feature dimension mismatch");
  Dataset out;
  out.num_classes = std::max(a.num_classes, b.num_classes);
  out.x.resize(a.size() + b.size(), a.dim());
  out.x << a.x, b.x;
  out.y.resize(a.size() + b.size());
  out.y << a.y, b.y;
  return out;
}

Dataset balance_classes(const Dataset& d, Rng& rng, int total_target) {
  if (d.num_classes < 1) throw std::domain_error("balance_classes: dataset has no classes");
  std::vector<std::vector<int>> by_class(static_cast<std::size_t>(d.num_classes));
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    by_class[static_cast<std::size_t>(d.y(i))].push_back(static_cast<int>(i));
  }
  std::size_t smallest = SIZE_MAX;
  for (int c = 0; c < d.num_classes; ++c) {
    auto& members = by_class[static_cast<std::size_t>(c)];
    if (members.empty()) {
      throw std::domain_error("balance_classes: class " + std::to_string(c) + " is absent");
    }
    smallest = std::min(smallest, members.size());
  }
  const int per_class =
      std::min(static_cast<int>(smallest), total_target / d.num_classes);

  std::vector<int> keep;
  keep.reserve(static_cast<std::size_t>(per_class) * static_cast<std::size_t>(d.num_classes));
  for (auto& members : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    keep.insert(keep.end(), members.begin(), members.begin() + per_class);
  }
  std::shuffle(keep.begin(), keep.end(), rng);
  return take_rows(d, keep);
}

std::pair<Dataset, Dataset> split(const Dataset& d, double train_fraction, Rng& rng) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::domain_error("split: train_fraction must be in (0, 1)");
  }
  std::vector<std::vector<int>> by_class(static_cast<std::size_t>(d.num_classes));
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    by_class[static_cast<std::size_t>(d.y(i))].push_back(static_cast<int>(i));
  }
  std::vector<int> train_rows;
  std::vector<int> test_rows;
  for (auto& members : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    const auto k = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(members.size())));
    train_rows.insert(train_rows.end(), members.begin(), members.begin() + std::min(k, members.size()));
    test_rows.insert(test_rows.end(), members.begin() + std::min(k, members.size()), members.end());
  }
  std::shuffle(train_rows.begin(), train_rows.end(), rng);
  std::shuffle(test_rows.begin(), test_rows.end(), rng);
  return {take_rows(d, train_rows), take_rows(d, test_rows)};
}

std::vector<Dataset> window_stream(const Dataset& train, int obs_per_window, int windows,
                                   Rng& rng) {
  const long needed = static_cast<long>(obs_per_window) * windows;
  if (needed > train.size()) {
    throw ConfigError("window_stream: need " + std::to_string(needed) +
                      " observations, training split has " + std::to_string(train.size()));
  }
  auto idx = shuffled_indices(train.size(), rng);
  std::vector<Dataset> batches;
  batches.reserve(static_cast<std::size_t>(windows));
  for (int w = 0; w < windows; ++w) {
    std::vector<int> rows(idx.begin() + static_cast<long>(w) * obs_per_window,
                          idx.begin() + (static_cast<long>(w) + 1) * obs_per_window);
    batches.push_back(take_rows(train, rows));
  }
  return batches;
}

StandardizationStats standardize(Dataset& train, Dataset& test) {
  if (train.empty()) throw std::domain_error("standardize: empty training split");
  StandardizationStats stats;
  stats.mean = train.x.colwise().mean();
  const Eigen::ArrayXd var =
      (train.x.rowwise() - stats.mean.transpose()).array().square().colwise().mean();
  stats.stddev = var.sqrt().matrix();

  for (Eigen::Index j = 0; j < train.dim(); ++j) {
    const double s = stats.stddev(j);
    if (s > 0.0) {
      train.x.col(j) = (train.x.col(j).array() - stats.mean(j)) / s;
      if (!test.empty()) test.x.col(j) = (test.x.col(j).array() - stats.mean(j)) / s;
    } else {
      train.x.col(j).setZero();
      if (!test.empty()) test.x.col(j).setZero();
    }
  }
  return stats;
}

}  // namespace htledge
