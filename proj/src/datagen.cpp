#include "neurochaos/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "neurochaos/errors.hpp"
#include "neurochaos/rng.hpp"

namespace neurochaos::datagen {

Dataset generate(const CircleGenConfig& config) {
  if (config.r0 <= 0.0 || config.r1 <= 0.0) throw ArgumentError("generate: radii must be positive");
  if (config.alpha < 0.0) throw ArgumentError("generate: alpha must be >= 0");
  if (config.n0 < 1 || config.n1 < 1) throw ArgumentError("generate: need >= 1 sample per class");

  Rng rng(config.seed);
  Dataset ds;
  ds.X = Matrix(config.n0 + config.n1, 2);
  ds.y.reserve(config.n0 + config.n1);

  std::size_t row = 0;
  const double radii[2] = {config.r0, config.r1};
  const std::size_t counts[2] = {config.n0, config.n1};
  for (int cls = 0; cls < 2; ++cls) {
    const double r = radii[cls];
    const std::size_t n = counts[cls];
    for (std::size_t j = 0; j < n; ++j) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) /
                           static_cast<double>(n);
      const double eta1 = rng.normal();
      const double eta2 = rng.normal();
      ds.X(row, 0) = r * std::cos(theta) + config.alpha * eta1;
      ds.X(row, 1) = r * std::sin(theta) + config.alpha * eta2;
      ds.y.push_back(cls);
      ++row;
    }
  }
  return ds;
}

std::size_t quadrant_of(double f1, double f2) {
  if (f1 >= 0.0) return f2 >= 0.0 ? 0 : 3;
  return f2 >= 0.0 ? 1 : 2;
}

Dataset reduce_for_low_sample(const Matrix& X, const LabelVector& y) {
  if (X.cols() != 2) throw ArgumentError("reduce_for_low_sample: expects 2-D data");
  if (X.rows() != y.size()) throw ArgumentError("reduce_for_low_sample: shape mismatch");

  std::vector<int> classes(y);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

  std::vector<bool> removed(X.rows(), false);
  for (const int cls : classes) {
    for (std::size_t quad = 0; quad < 4; ++quad) {
      std::vector<std::size_t> cell;
      for (std::size_t i = 0; i < X.rows(); ++i) {
        if (y[i] == cls && quadrant_of(X(i, 0), X(i, 1)) == quad) cell.push_back(i);
      }
      if (cell.empty()) continue;
      const std::size_t n_remove = (3 * cell.size() + 9) / 10;  // ceil(0.3 n)
      std::stable_sort(cell.begin(), cell.end(), [&](std::size_t a, std::size_t b) {
        const double na = std::hypot(X(a, 0), X(a, 1));
        const double nb = std::hypot(X(b, 0), X(b, 1));
        if (na != nb) return na > nb;
        return a < b;  // ties by original index
      });
      for (std::size_t i = 0; i < n_remove && i < cell.size(); ++i) removed[cell[i]] = true;
    }
  }

  Dataset out;
  std::size_t kept = 0;
  for (std::size_t i = 0; i < X.rows(); ++i) kept += removed[i] ? 0 : 1;
  out.X = Matrix(kept, 2);
  out.y.reserve(kept);
  std::size_t row = 0;
  for (std::size_t i = 0; i < X.rows(); ++i) {
    if (removed[i]) continue;
    out.X(row, 0) = X(i, 0);
    out.X(row, 1) = X(i, 1);
    out.y.push_back(y[i]);
    ++row;
  }
  return out;
}

double radial_overlap_fraction(const Matrix& X, const LabelVector& y) {
  std::vector<double> r1;
  std::vector<double> r0;
  for (std::size_t i = 0; i < X.rows(); ++i) {
    const double r = std::hypot(X(i, 0), X(i, 1));
    (y[i] == 0 ? r0 : r1).push_back(r);
  }
  if (r0.empty() || r1.empty()) throw ArgumentError("radial_overlap_fraction: need both classes");
  std::sort(r1.begin(), r1.end());
  const std::size_t idx = static_cast<std::size_t>(0.95 * static_cast<double>(r1.size() - 1));
  const double p95 = r1[idx];
  std::size_t inside = 0;
  for (const double r : r0) inside += r < p95 ? 1 : 0;
  return static_cast<double>(inside) / static_cast<double>(r0.size());
}

}  // namespace neurochaos::datagen
