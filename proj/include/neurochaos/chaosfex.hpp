#pragma once

#include <string>
#include <vector>

#include "neurochaos/chaos.hpp"
#include "neurochaos/matrix.hpp"

namespace neurochaos::chaosfex {

// The four ChaosFEX features of one neuron's trajectory, plus a diagnostic
// flag for trajectories that hit the iteration cap.
struct ChaosFeatures {
  double firing_time;  // iterations until the neighbourhood was reached
  double firing_rate;  // fraction of samples at or above b
  double energy;       // sum of squared samples
  double entropy;      // binary Shannon entropy of the symbol distribution, bits
  bool fired;
};

// First-order estimator: Shannon entropy (bits) of the two-symbol empirical
// distribution {p1 = firing_rate, p0 = 1 - p1}, with 0*log2(0) == 0. The
// entropy feature routes through here, so a different estimator only needs
// to replace this function.
double symbolic_entropy(double firing_rate);

ChaosFeatures extract_features(double stimulus, const chaos::GlsParams& params);

struct TransformResult {
  Matrix features;            // m x 4n
  std::size_t unfired_cells;  // cells whose trajectory hit the iteration cap
};

// Maps an m x n stimulus matrix (entries in [0,1]) to the m x 4n feature
// matrix. Columns 4k..4k+3 hold (time, rate, energy, entropy) for input
// dimension k. Cells are independent, so the result is identical for any
// thread count.
TransformResult transform(const Matrix& data, const chaos::GlsParams& params,
                          unsigned threads = 1);

// CSV header names for a transformed n-dimensional input:
// f0_time, f0_rate, f0_energy, f0_entropy, f1_time, ...
std::vector<std::string> feature_header(std::size_t input_dims);

}  // namespace neurochaos::chaosfex
