#include "htledge/greedy_tl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace htledge {

Dataset subsample_per_class(const Dataset& d, int n, Rng& rng) {
  if (n < 1) throw std::domain_error("subsample_per_class: n must be >= 1");
  std::vector<std::vector<int>> by_class(static_cast<std::size_t>(d.num_classes));
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    by_class[static_cast<std::size_t>(d.y(i))].push_back(static_cast<int>(i));
  }
  std::vector<int> keep;
  for (auto& members : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(n), members.size());
    keep.insert(keep.end(), members.begin(), members.begin() + take);
  }
  return take_rows(d, keep);
}

double entropy(const Dataset& d, int num_classes) {
  if (num_classes < 2) throw std::domain_error("entropy: num_classes must be >= 2");
  if (d.empty()) return 0.0;
  std::vector<double> counts(static_cast<std::size_t>(num_classes), 0.0);
  for (Eigen::Index i = 0; i < d.size(); ++i) counts[static_cast<std::size_t>(d.y(i))] += 1.0;
  const double n = static_cast<double>(d.size());
  const double log_k = std::log(static_cast<double>(num_classes));
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) {
      const double p = c / n;
      h -= p * std::log(p) / log_k;
    }
  }
  return h;
}

namespace {

// Growing Cholesky state for one per-class ridge problem restricted to the
// selected atoms: chol holds L with G[S,S] + lambda I = L L^T, and w = L^-1 b_S.
// Atom columns are normalized to unit l2 norm so the ridge penalty has the
// same strength for every atom at every sample size; `norm` maps the fitted
// coefficients back to the raw atom scale.
struct ClassState {
  Eigen::MatrixXd g;      // normalized atom Gram matrix + lambda on the diagonal
  Eigen::VectorXd b;      // normalized atom-target correlations
  Eigen::VectorXd norm;   // original column norms (0 marks a dead atom)
  Eigen::MatrixXd chol;
  Eigen::VectorXd w;
  double explained = 0.0;  // ||w||^2; risk = n*K - sum of these
};

}  // namespace

LinearModel greedy_tl(const Dataset& data_in, const std::vector<LinearModel>& sources,
                      const GreedyTLConfig& cfg, GreedyTLTrace* trace) {
  if (data_in.empty()) throw std::domain_error("greedy_tl: empty dataset");
  if (cfg.lambda_tl <= 0.0) throw std::domain_error("greedy_tl: lambda_tl must be > 0");
  const int k = data_in.num_classes;
  const int d = static_cast<int>(data_in.dim());
  for (const auto& s : sources) {
    if (s.num_classes() != k || s.feature_dim() != d) {
      throw std::domain_error("greedy_tl: source model shape mismatch");
    }
  }

  Dataset sampled;
  const Dataset* data = &data_in;
  if (cfg.per_class_sample > 0) {
    Rng rng(mix_seed(cfg.seed, 0x6774));
    sampled = subsample_per_class(data_in, cfg.per_class_sample, rng);
    data = &sampled;
  }

  const auto n = data->size();
  const int m = static_cast<int>(sources.size());
  const int atoms = d + m;
  const int budget = cfg.budget < 0 ? atoms : std::min(cfg.budget, atoms);
  const double lambda = cfg.lambda_tl;

  // Source outputs on the local data, one n x K score matrix per source.
  std::vector<Eigen::MatrixXd> source_scores;
  source_scores.reserve(static_cast<std::size_t>(m));
  for (const auto& s : sources) source_scores.push_back(decision_scores(s, data->x));

  const Eigen::MatrixXd raw_gram = data->x.transpose() * data->x;

  std::vector<ClassState> cls(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    ClassState& st = cls[static_cast<std::size_t>(c)];
    Eigen::MatrixXd a_src(n, m);  // per-class source atom columns
    for (int s = 0; s < m; ++s) a_src.col(s) = source_scores[static_cast<std::size_t>(s)].col(c);

    st.g.resize(atoms, atoms);
    st.g.topLeftCorner(d, d) = raw_gram;
    if (m > 0) {
      st.g.topRightCorner(d, m) = data->x.transpose() * a_src;
      st.g.bottomLeftCorner(m, d) = st.g.topRightCorner(d, m).transpose();
      st.g.bottomRightCorner(m, m) = a_src.transpose() * a_src;
    }
    st.g.diagonal().array() += lambda;

    Eigen::VectorXd target(n);
    for (Eigen::Index i = 0; i < n; ++i) target(i) = data->y(i) == c ? 1.0 : -1.0;
    st.b.resize(atoms);
    st.b.head(d) = data->x.transpose() * target;
    if (m > 0) st.b.tail(m) = a_src.transpose() * target;

    st.chol.resize(budget, budget);
    st.w.resize(budget);
  }

  const double initial_risk = static_cast<double>(k) * static_cast<double>(n);
  if (trace) {
    trace->initial_risk = initial_risk;
    trace->selected.clear();
    trace->risk.clear();
  }
  const double min_gain = 1e-12 * std::max(1.0, initial_risk);

  std::vector<int> selected;
  std::vector<char> in_model(static_cast<std::size_t>(atoms), 0);
  std::vector<Eigen::VectorXd> z_work(static_cast<std::size_t>(k));

  while (static_cast<int>(selected.size()) < budget) {
    const int s_count = static_cast<int>(selected.size());
    int best_atom = -1;
    double best_gain = 0.0;

    for (int j = 0; j < atoms; ++j) {
      if (in_model[static_cast<std::size_t>(j)]) continue;
      double gain = 0.0;
      bool usable = true;
      for (int c = 0; c < k && usable; ++c) {
        ClassState& st = cls[static_cast<std::size_t>(c)];
        Eigen::VectorXd& z = z_work[static_cast<std::size_t>(c)];
        z.resize(s_count);
        for (int r = 0; r < s_count; ++r) z(r) = st.g(selected[static_cast<std::size_t>(r)], j);
        if (s_count > 0) {
          st.chol.topLeftCorner(s_count, s_count)
              .triangularView<Eigen::Lower>()
              .solveInPlace(z);
        }
        const double pivot2 = st.g(j, j) - z.squaredNorm();
        if (pivot2 <= 1e-12) {
          usable = false;
          break;
        }
        const double w_new = (st.b(j) - z.dot(st.w.head(s_count))) / std::sqrt(pivot2);
        gain += w_new * w_new;
      }
      if (usable && gain > best_gain + 1e-15 && gain > min_gain) {
        best_gain = gain;
        best_atom = j;  // strict comparison keeps the lowest atom index on ties
      }
    }

    if (best_atom < 0) break;

    // Commit the atom: extend every per-class factor by one row.
    for (int c = 0; c < k; ++c) {
      ClassState& st = cls[static_cast<std::size_t>(c)];
      Eigen::VectorXd z(s_count);
      for (int r = 0; r < s_count; ++r) z(r) = st.g(selected[static_cast<std::size_t>(r)], best_atom);
      if (s_count > 0) {
        st.chol.topLeftCorner(s_count, s_count).triangularView<Eigen::Lower>().solveInPlace(z);
      }
      const double pivot = std::sqrt(st.g(best_atom, best_atom) - z.squaredNorm());
      st.chol.row(s_count).head(s_count) = z.transpose();
      st.chol(s_count, s_count) = pivot;
      const double w_new = (st.b(best_atom) - z.dot(st.w.head(s_count))) / pivot;
      st.w(s_count) = w_new;
      st.explained += w_new * w_new;
    }
    selected.push_back(best_atom);
    in_model[static_cast<std::size_t>(best_atom)] = 1;
    if (trace) {
      trace->selected.push_back(best_atom);
      double explained = 0.0;
      for (const auto& st : cls) explained += st.explained;
      trace->risk.push_back(initial_risk - explained);
    }
  }

  // Per-class ridge coefficients on the selected atoms, collapsed back onto
  // the raw feature space (source rows are linear, so substitution is exact).
  LinearModel out;
  out.weights = Eigen::MatrixXd::Zero(k, d + 1);
  const int s_count = static_cast<int>(selected.size());
  for (int c = 0; c < k; ++c) {
    ClassState& st = cls[static_cast<std::size_t>(c)];
    Eigen::VectorXd beta = st.w.head(s_count);
    st.chol.topLeftCorner(s_count, s_count)
        .triangularView<Eigen::Lower>()
        .transpose()
        .solveInPlace(beta);
    for (int r = 0; r < s_count; ++r) {
      const int atom = selected[static_cast<std::size_t>(r)];
      if (atom < d) {
        out.weights(c, atom) += beta(r);
      } else {
        out.weights.row(c) += beta(r) * sources[static_cast<std::size_t>(atom - d)].weights.row(c);
      }
    }
  }
  return out;
}

}  // namespace htledge
