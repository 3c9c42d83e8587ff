#include "htledge/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace htledge {

int draw_mule_count(Rng& rng, double lambda) {
  if (lambda <= 0.0) throw std::domain_error("draw_mule_count: lambda must be > 0");
  std::poisson_distribution<int> poisson(lambda);
  int n = 0;
  do {
    n = poisson(rng);
  } while (n < 1);
  return n;
}

Eigen::VectorXd zipf_probabilities(int n, double alpha) {
  if (n < 1) throw std::domain_error("zipf_probabilities: n must be >= 1");
  if (alpha <= 0.0) throw std::domain_error("zipf_probabilities: alpha must be > 0");
  Eigen::VectorXd p(n);
  for (int r = 1; r <= n; ++r) p(r - 1) = std::pow(static_cast<double>(r), -alpha);
  p /= p.sum();
  return p;
}

std::vector<Dataset> allocate(const Dataset& batch, int n_mules, Allocation mode, double alpha,
                              Rng& rng) {
  if (n_mules < 1) throw std::domain_error("allocate: need at least one mule");
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n_mules));
  if (mode == Allocation::Zipf) {
    const Eigen::VectorXd p = zipf_probabilities(n_mules, alpha);
    std::discrete_distribution<int> pick(p.data(), p.data() + p.size());
    for (Eigen::Index i = 0; i < batch.size(); ++i) {
      rows[static_cast<std::size_t>(pick(rng))].push_back(static_cast<int>(i));
    }
  } else {
    std::uniform_int_distribution<int> pick(0, n_mules - 1);
    for (Eigen::Index i = 0; i < batch.size(); ++i) {
      rows[static_cast<std::size_t>(pick(rng))].push_back(static_cast<int>(i));
    }
  }
  std::vector<Dataset> parts;
  parts.reserve(static_cast<std::size_t>(n_mules));
  for (const auto& r : rows) parts.push_back(take_rows(batch, r));
  return parts;
}

std::pair<Dataset, Dataset> route_edge_fraction(const Dataset& batch, double edge_fraction,
                                                Rng& rng) {
  if (edge_fraction < 0.0 || edge_fraction > 1.0) {
    throw std::domain_error("route_edge_fraction: fraction must be in [0, 1]");
  }
  std::vector<int> edge_rows;
  std::vector<int> mule_rows;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (Eigen::Index i = 0; i < batch.size(); ++i) {
    if (u(rng) < edge_fraction) {
      edge_rows.push_back(static_cast<int>(i));
    } else {
      mule_rows.push_back(static_cast<int>(i));
    }
  }
  return {take_rows(batch, edge_rows), take_rows(batch, mule_rows)};
}

std::vector<Dataset> aggregation_heuristic(std::vector<Dataset> partitions,
                                           std::int64_t model_wire_bits,
                                           std::vector<Migration>* log) {
  if (model_wire_bits <= 0) throw std::domain_error("aggregation_heuristic: model_bits must be > 0");
  const std::int64_t threshold = 2 * model_wire_bits;
  const int n = static_cast<int>(partitions.size());

  auto payload_bits = [&](int i) -> std::int64_t {
    const Dataset& p = partitions[static_cast<std::size_t>(i)];
    return p.empty() ? 0 : observation_bits(static_cast<int>(p.dim())) * p.size();
  };
  auto under = [&](int i) { return payload_bits(i) > 0 && payload_bits(i) < threshold; };

  auto move_all = [&](int src, int dst) {
    const std::int64_t bits = payload_bits(src);
    if (log) {
      log->push_back({src, dst,
                      bits,
                      static_cast<int>(partitions[static_cast<std::size_t>(src)].size())});
    }
    partitions[static_cast<std::size_t>(dst)] =
        concat(partitions[static_cast<std::size_t>(dst)], partitions[static_cast<std::size_t>(src)]);
    partitions[static_cast<std::size_t>(src)].x.resize(0, partitions[static_cast<std::size_t>(src)].dim());
    partitions[static_cast<std::size_t>(src)].y.resize(0);
  };

  while (true) {
    std::vector<int> under_set;
    for (int i = 0; i < n; ++i) {
      if (under(i)) under_set.push_back(i);
    }
    if (under_set.empty()) break;
    if (under_set.size() == 1) {
      // Lone under-threshold mule joins the smallest over-threshold one.
      int dst = -1;
      for (int i = 0; i < n; ++i) {
        if (payload_bits(i) >= threshold &&
            (dst < 0 || payload_bits(i) < payload_bits(dst))) {
          dst = i;
        }
      }
      if (dst >= 0) move_all(under_set.front(), dst);
      break;
    }
    int src = under_set.front();
    int dst = under_set.front();
    for (int i : under_set) {
      if (payload_bits(i) < payload_bits(src)) src = i;
    }
    for (int i : under_set) {
      if (i != src && (dst == src || payload_bits(i) > payload_bits(dst))) dst = i;
    }
    move_all(src, dst);
  }
  return partitions;
}

}  // namespace htledge
