#include "htledge/synthetic.hpp"

#include <cmath>

namespace htledge {

namespace {

constexpr int kQuant = 10;
constexpr int kWilderness = 4;
constexpr int kSoil = 40;
constexpr int kFeatures = kQuant + kWilderness + kSoil;
constexpr int kClasses = 7;

// Class-mean offsets for the quantitative block, in within-class noise units.
// Column 0 plays the role of elevation (the dominant signal, with classes
// 0/1/4 clustered); later columns carry progressively weaker signals and the
// last two are pure noise.
constexpr double kClassMeans[kClasses][kQuant] = {
    {0.55, 0.30, -0.50, 0.10, 0.70, -0.20, 0.15, -0.05, 0.0, 0.0},
    {0.30, -0.20, -0.30, 0.40, 0.50, 0.10, -0.10, 0.12, 0.0, 0.0},
    {-1.20, 0.50, 0.80, -0.30, 0.20, -0.60, 0.20, -0.15, 0.0, 0.0},
    {-2.10, 0.90, 0.40, 0.70, -0.40, 0.30, -0.25, 0.10, 0.0, 0.0},
    {0.05, -0.70, 0.60, 0.90, -0.20, -1.00, 0.10, 0.20, 0.0, 0.0},
    {-0.85, 0.20, 1.00, -0.60, -0.80, 0.50, 0.05, -0.10, 0.0, 0.0},
    {1.60, -0.40, -0.90, 0.30, 0.90, 0.60, -0.20, 0.08, 0.0, 0.0},
};

// Integer encoding of the quantitative block (CovType-like magnitudes).
constexpr double kOffset[kQuant] = {2800, 150, 14, 250, 45, 1700, 210, 220, 140, 1900};
constexpr double kUnit[kQuant] = {280, 110, 7, 210, 60, 1300, 25, 20, 40, 1300};

// Wilderness-area affinity patterns, sharpened into probabilities by the
// categorical_sharpness knob.
constexpr double kWildernessPattern[kClasses][kWilderness] = {
    {1.0, 0.3, 0.0, 0.0}, {0.8, 0.5, 0.1, 0.0}, {0.0, 0.2, 1.0, 0.4}, {0.0, 0.0, 0.4, 1.0},
    {0.5, 1.0, 0.2, 0.0}, {0.1, 0.3, 0.9, 0.5}, {1.0, 0.1, 0.0, 0.3},
};

// Soil types concentrate around a class-specific center; neighbouring
// centers give neighbouring classes overlapping soil profiles.
constexpr double kSoilCenter[kClasses] = {8, 12, 20, 26, 14, 23, 3};
constexpr double kSoilWidth[kClasses] = {4, 5, 4, 3, 5, 4, 2};

std::vector<double> softmax(const std::vector<double>& logits) {
  double max_logit = logits.front();
  for (double v : logits) max_logit = std::max(max_logit, v);
  std::vector<double> p(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - max_logit);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

}  // namespace

Dataset make_synthetic_covtype(const SyntheticConfig& cfg) {
  Dataset d;
  const Eigen::Index n = static_cast<Eigen::Index>(cfg.per_class) * kClasses;
  d.x.resize(n, kFeatures);
  d.y.resize(n);
  d.num_classes = kClasses;

  Rng rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Eigen::Index row = 0;
  for (int c = 0; c < kClasses; ++c) {
    std::vector<double> w_logits(kWilderness);
    for (int a = 0; a < kWilderness; ++a) {
      w_logits[static_cast<std::size_t>(a)] = cfg.categorical_sharpness * kWildernessPattern[c][a];
    }
    const auto w_probs = softmax(w_logits);
    std::discrete_distribution<int> pick_wilderness(w_probs.begin(), w_probs.end());

    std::vector<double> s_logits(kSoil);
    for (int k = 0; k < kSoil; ++k) {
      const double z = (k - kSoilCenter[c]) / kSoilWidth[c];
      s_logits[static_cast<std::size_t>(k)] = -0.5 * cfg.categorical_sharpness * z * z;
    }
    const auto s_probs = softmax(s_logits);
    std::discrete_distribution<int> pick_soil(s_probs.begin(), s_probs.end());

    for (int i = 0; i < cfg.per_class; ++i, ++row) {
      for (int j = 0; j < kQuant; ++j) {
        const double value = cfg.separation * kClassMeans[c][j] + gauss(rng);
        d.x(row, j) = std::round(kOffset[j] + kUnit[j] * value);
      }
      const int area = pick_wilderness(rng);
      for (int a = 0; a < kWilderness; ++a) d.x(row, kQuant + a) = a == area ? 1.0 : 0.0;
      const int soil = pick_soil(rng);
      for (int k = 0; k < kSoil; ++k) {
        d.x(row, kQuant + kWilderness + k) = k == soil ? 1.0 : 0.0;
      }
      d.y(row) = c;
    }
  }
  return d;
}

}  // namespace htledge
