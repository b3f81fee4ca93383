#include "neurochaos/chaosfex.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "neurochaos/errors.hpp"

namespace neurochaos::chaosfex {

double symbolic_entropy(double firing_rate) {
  double h = 0.0;
  if (firing_rate > 0.0) h -= firing_rate * std::log2(firing_rate);
  const double p0 = 1.0 - firing_rate;
  if (p0 > 0.0) h -= p0 * std::log2(p0);
  return h;
}

ChaosFeatures extract_features(double stimulus, const chaos::GlsParams& params) {
  const chaos::Trajectory traj = chaos::fire(stimulus, params);
  double energy = 0.0;
  std::size_t above = 0;
  for (const double a : traj.samples) {
    energy += a * a;
    if (a >= params.b) ++above;
  }
  const double rate = static_cast<double>(above) / static_cast<double>(traj.samples.size());
  return ChaosFeatures{static_cast<double>(traj.firing_time()), rate, energy,
                       symbolic_entropy(rate), traj.fired};
}

TransformResult transform(const Matrix& data, const chaos::GlsParams& params,
                          unsigned threads) {
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t j = 0; j < data.cols(); ++j) {
      const double v = data(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw DataError("transform: entry out of [0,1] at row " + std::to_string(i) +
                        ", col " + std::to_string(j) + " (value " + std::to_string(v) + ")");
      }
    }
  }

  TransformResult result;
  result.features = Matrix(data.rows(), 4 * data.cols());
  result.unfired_cells = 0;

  std::atomic<std::size_t> unfired{0};
  auto work = [&](std::size_t row_begin, std::size_t row_end) {
    std::size_t local_unfired = 0;
    for (std::size_t i = row_begin; i < row_end; ++i) {
      for (std::size_t k = 0; k < data.cols(); ++k) {
        const ChaosFeatures f = extract_features(data(i, k), params);
        result.features(i, 4 * k + 0) = f.firing_time;
        result.features(i, 4 * k + 1) = f.firing_rate;
        result.features(i, 4 * k + 2) = f.energy;
        result.features(i, 4 * k + 3) = f.entropy;
        if (!f.fired) ++local_unfired;
      }
    }
    unfired += local_unfired;
  };

  if (threads <= 1 || data.rows() < 2) {
    work(0, data.rows());
  } else {
    const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(data.rows()));
    std::vector<std::thread> pool;
    pool.reserve(n);
    const std::size_t chunk = (data.rows() + n - 1) / n;
    for (unsigned t = 0; t < n; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(data.rows(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  result.unfired_cells = unfired.load();
  return result;
}

std::vector<std::string> feature_header(std::size_t input_dims) {
  static const char* kSuffix[4] = {"time", "rate", "energy", "entropy"};
  std::vector<std::string> names;
  names.reserve(4 * input_dims);
  for (std::size_t k = 0; k < input_dims; ++k) {
    for (const char* s : kSuffix) {
      names.push_back("f" + std::to_string(k) + "_" + s);
    }
  }
  return names;
}

}  // namespace neurochaos::chaosfex
