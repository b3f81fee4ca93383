#include "neurochaos/chaos.hpp"

#include <cmath>
#include <string>

#include "neurochaos/errors.hpp"

namespace neurochaos::chaos {

GlsParams::GlsParams(double q_, double b_, double epsilon_, std::size_t max_iters_)
    : q(q_), b(b_), epsilon(epsilon_), max_iters(max_iters_) {
  if (!(q >= 0.0 && q <= 1.0)) throw ArgumentError("q must be in [0,1], got " + std::to_string(q));
  if (!(b > 0.0 && b < 1.0)) throw ArgumentError("b must be in (0,1), got " + std::to_string(b));
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ArgumentError("epsilon must be in (0,1), got " + std::to_string(epsilon));
  }
  if (max_iters < 1) throw ArgumentError("max_iters must be >= 1");
}

double skew_tent_step(double x, double b) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw ArgumentError("skew_tent_step: x must be in [0,1], got " + std::to_string(x));
  }
  if (!(b > 0.0 && b < 1.0)) {
    throw ArgumentError("skew_tent_step: b must be in (0,1), got " + std::to_string(b));
  }
  return x < b ? x / b : (1.0 - x) / (1.0 - b);
}

Trajectory fire(double stimulus, const GlsParams& params) {
  if (!(stimulus >= 0.0 && stimulus <= 1.0)) {
    throw ArgumentError("fire: stimulus must be in [0,1], got " + std::to_string(stimulus));
  }
  Trajectory traj;
  traj.samples.reserve(16);
  double x = params.q;
  traj.samples.push_back(x);
  if (std::abs(x - stimulus) < params.epsilon) {
    traj.fired = true;
    return traj;
  }
  for (std::size_t t = 1; t <= params.max_iters; ++t) {
    x = skew_tent_step(x, params.b);
    traj.samples.push_back(x);
    if (std::abs(x - stimulus) < params.epsilon) {
      traj.fired = true;
      return traj;
    }
  }
  traj.fired = false;
  return traj;
}

ApproximationResult approximate_function(std::span<const double> f,
                                         const GlsParams& params) {
  ApproximationResult result;
  result.approximations.reserve(f.size());
  result.firing_times.reserve(f.size());
  result.total_error = 0.0;
  std::vector<std::size_t> unfired;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Trajectory traj = fire(f[i], params);
    if (!traj.fired) unfired.push_back(i);
    result.approximations.push_back(traj.samples.back());
    result.firing_times.push_back(traj.firing_time());
    result.total_error += std::abs(f[i] - traj.samples.back());
  }
  if (!unfired.empty()) {
    std::string msg = "approximate_function: neurons did not fire within " +
                      std::to_string(params.max_iters) + " iterations at indices [";
    for (std::size_t i = 0; i < unfired.size(); ++i) {
      if (i) msg += ", ";
      msg += std::to_string(unfired[i]);
    }
    msg += "]";
    throw ApproximationError(msg, std::move(unfired));
  }
  return result;
}

}  // namespace neurochaos::chaos
