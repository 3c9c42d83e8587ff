#pragma once

#include <cstdint>

#include "htledge/dataset.hpp"

namespace htledge {

/// Generator for a CovType-format stand-in dataset: 54 integer features
/// (10 quantitative, 4 wilderness one-hot, 40 soil one-hot) and 7 classes
/// with substantial pairwise overlap, so a linear classifier tops out well
/// below perfect accuracy. Difficulty knobs are frozen at values calibrated
/// against the energy/accuracy study this library reproduces.
struct SyntheticConfig {
  int per_class = 2900;
  std::uint64_t seed = 0x0c07781e;
  double separation = 0.62;          // scale of class-mean offsets
  double categorical_sharpness = 1.9;  // class dependence of the one-hot blocks
};

Dataset make_synthetic_covtype(const SyntheticConfig& cfg);

}  // namespace htledge
