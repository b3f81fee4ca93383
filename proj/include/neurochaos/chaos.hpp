#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace neurochaos::chaos {

// Hyperparameters of a GLS neuron: initial activity q, discrimination
// threshold b, halt neighbourhood half-width epsilon, and an iteration cap
// that bounds trajectories which never reach the neighbourhood numerically.
struct GlsParams {
  double q;
  double b;
  double epsilon;
  std::size_t max_iters;

  GlsParams(double q, double b, double epsilon, std::size_t max_iters = 10000);
};

// Chaotic firing trajectory. samples[0] is always q; firing time is the
// index of the last sample. A non-fired trajectory has max_iters+1 samples.
struct Trajectory {
  std::vector<double> samples;
  bool fired = false;

  std::size_t firing_time() const { return samples.size() - 1; }
};

// One iteration of the skew-tent map on the closed interval [0,1]:
// x/b below the threshold, (1-x)/(1-b) from the threshold up (so 1 -> 0).
double skew_tent_step(double x, double b);

// Iterates the map from q and halts at the first sample strictly inside
// (stimulus - epsilon, stimulus + epsilon). Pure and deterministic.
Trajectory fire(double stimulus, const GlsParams& params);

struct ApproximationResult {
  std::vector<double> approximations;     // final trajectory sample per neuron
  std::vector<std::size_t> firing_times;  // N_i per neuron
  double total_error;                     // sum of |f[i] - approximations[i]|
};

// Constructive universal-approximation procedure: one neuron per sample of f,
// each fired at its sample. When every neuron fires the returned total error
// is below 2 * L * params.epsilon, so a caller wanting total error
// eps_total should set params.epsilon = eps_total / (2 * L).
// Throws ApproximationError listing the indices of any neurons that hit the
// iteration cap.
ApproximationResult approximate_function(std::span<const double> f,
                                         const GlsParams& params);

}  // namespace neurochaos::chaos
