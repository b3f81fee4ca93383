#include "neurochaos/svm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "neurochaos/errors.hpp"
#include "neurochaos/rng.hpp"

namespace neurochaos::svm {

namespace {

std::vector<int> sorted_classes(const LabelVector& y) {
  std::vector<int> classes(y);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  return classes;
}

void validate_training_input(const Matrix& X, const LabelVector& y) {
  if (X.rows() == 0 || X.rows() != y.size()) {
    throw ArgumentError("train: feature/label shape mismatch");
  }
  for (const double v : X.data()) {
    if (!std::isfinite(v)) throw DataError("train: feature matrix contains NaN/Inf");
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

LinearModel train_linear(const Matrix& X, const LabelVector& y, double C, int epochs,
                         std::uint64_t seed, std::vector<double>* epoch_objectives) {
  validate_training_input(X, y);
  if (C <= 0.0) throw ArgumentError("train_linear: C must be positive");
  if (epochs < 1) throw ArgumentError("train_linear: epochs must be >= 1");
  const std::vector<int> classes = sorted_classes(y);
  if (classes.size() < 2) throw ProtocolError("train_linear: need at least two classes");

  const std::size_t m = X.rows();
  const std::size_t d = X.cols();
  const double lambda = 1.0 / (C * static_cast<double>(m));
  const double ball_radius = 1.0 / std::sqrt(lambda);

  // Binary trains one hyperplane (positive = classes[1]); multiclass trains
  // one per class. Every head replays the same shuffle stream so that a
  // binary problem routed through one-vs-rest produces the exactly negated
  // twin head and therefore identical predictions.
  const std::size_t n_heads = classes.size() == 2 ? 1 : classes.size();

  LinearModel model;
  model.classes = classes;
  model.weights = Matrix(n_heads, d);
  model.biases.assign(n_heads, 0.0);
  model.C = C;
  model.epochs = epochs;
  model.seed = seed;

  if (epoch_objectives) epoch_objectives->clear();

  // The returned hyperplane is the average of the iterates over the second
  // half of the updates; the last iterate alone is too noisy on overlapping
  // data.
  const std::uint64_t total_updates = static_cast<std::uint64_t>(epochs) * m;
  const std::uint64_t burnin = total_updates / 2;

  std::vector<double> w(d + 1);  // augmented: w[d] is the (regularized) bias
  std::vector<double> avg(d + 1);
  for (std::size_t h = 0; h < n_heads; ++h) {
    const int positive = classes.size() == 2 ? classes[1] : classes[h];
    std::fill(w.begin(), w.end(), 0.0);
    std::fill(avg.begin(), avg.end(), 0.0);
    Rng rng(seed);
    std::uint64_t t = 0;
    std::uint64_t n_avg = 0;
    for (int epoch = 0; epoch < epochs; ++epoch) {
      const auto order = rng.permutation(m);
      for (const std::size_t i : order) {
        ++t;
        const double eta = 1.0 / (lambda * static_cast<double>(t));
        const double z = y[i] == positive ? 1.0 : -1.0;
        const auto xi = X.row(i);
        const double margin = z * (dot({w.data(), d}, xi) + w[d]);
        const double decay = 1.0 - 1.0 / static_cast<double>(t);
        for (double& wj : w) wj *= decay;
        if (margin < 1.0) {
          const double step = eta * z;
          for (std::size_t j = 0; j < d; ++j) w[j] += step * xi[j];
          w[d] += step;
        }
        double norm_sq = 0.0;
        for (const double wj : w) norm_sq += wj * wj;
        if (norm_sq > ball_radius * ball_radius) {
          const double shrink = ball_radius / std::sqrt(norm_sq);
          for (double& wj : w) wj *= shrink;
        }
        if (t > burnin) {
          ++n_avg;
          const double blend = 1.0 / static_cast<double>(n_avg);
          for (std::size_t j = 0; j <= d; ++j) avg[j] += (w[j] - avg[j]) * blend;
        }
      }
      if (epoch_objectives && h == 0) {
        const std::vector<double>& cur = n_avg ? avg : w;
        double hinge = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          const double z = y[i] == positive ? 1.0 : -1.0;
          const double margin = z * (dot({cur.data(), d}, X.row(i)) + cur[d]);
          hinge += std::max(0.0, 1.0 - margin);
        }
        double norm_sq = 0.0;
        for (const double wj : cur) norm_sq += wj * wj;
        epoch_objectives->push_back(lambda / 2.0 * norm_sq + hinge / static_cast<double>(m));
      }
    }
    const std::vector<double>& final_w = n_avg ? avg : w;
    for (std::size_t j = 0; j < d; ++j) model.weights(h, j) = final_w[j];
    model.biases[h] = final_w[d];
  }
  return model;
}

std::vector<double> decision_values(const LinearModel& model, std::span<const double> x) {
  if (x.size() != model.weights.cols()) {
    throw ArgumentError("predict: feature dimension " + std::to_string(x.size()) +
                        " does not match model dimension " +
                        std::to_string(model.weights.cols()));
  }
  std::vector<double> scores(model.weights.rows());
  for (std::size_t h = 0; h < model.weights.rows(); ++h) {
    scores[h] = dot(model.weights.row(h), x) + model.biases[h];
  }
  return scores;
}

namespace {

template <typename Model>
LabelVector predict_impl(const Model& model, const Matrix& X) {
  LabelVector out;
  out.reserve(X.rows());
  for (std::size_t i = 0; i < X.rows(); ++i) {
    const auto scores = decision_values(model, X.row(i));
    if (scores.size() == 1) {
      out.push_back(scores[0] > 0.0 ? model.classes[1] : model.classes[0]);
    } else {
      std::size_t best = 0;
      for (std::size_t h = 1; h < scores.size(); ++h) {
        if (scores[h] > scores[best]) best = h;  // ties keep the lowest class
      }
      out.push_back(model.classes[best]);
    }
  }
  return out;
}

}  // namespace

LabelVector predict(const LinearModel& model, const Matrix& X) {
  return predict_impl(model, X);
}

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
  double dist_sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    dist_sq += diff * diff;
  }
  return std::exp(-gamma * dist_sq);
}

double resolve_gamma(const Matrix& X, const GammaSpec& gamma) {
  if (!gamma.is_scale) {
    if (gamma.value <= 0.0) throw ArgumentError("gamma must be positive");
    return gamma.value;
  }
  const auto& v = X.data();
  if (v.empty()) throw ArgumentError("resolve_gamma: empty feature matrix");
  double mean = 0.0;
  for (const double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (const double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(v.size());
  if (var <= 0.0) throw DataError("resolve_gamma: features have zero variance");
  return 1.0 / (static_cast<double>(X.cols()) * var);
}

namespace {

// Platt-style SMO for one binary subproblem, full error cache, deterministic
// scan order seeded per head.
class SmoSolver {
 public:
  SmoSolver(const Matrix& X, std::vector<int> z, double C, double gamma, std::uint64_t seed)
      : X_(X),
        z_(std::move(z)),
        m_(X.rows()),
        C_(C),
        gamma_(gamma),
        rng_(seed),
        alpha_(X.rows(), 0.0),
        errors_(X.rows()) {
    for (std::size_t i = 0; i < m_; ++i) errors_[i] = -static_cast<double>(z_[i]);
    const std::size_t bytes_per_row = m_ * sizeof(double);
    cache_cap_ = std::max<std::size_t>(8, std::min(m_, (128u << 20) / std::max<std::size_t>(1, bytes_per_row)));
    diag_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) diag_[i] = 1.0;  // exp(0)
  }

  void solve() {
    bool examine_all = true;
    std::size_t changed = 0;
    std::size_t passes = 0;
    while ((changed > 0 || examine_all) && passes < kMaxPasses) {
      ++passes;
      changed = 0;
      if (examine_all) {
        for (std::size_t i = 0; i < m_; ++i) changed += examine(i);
      } else {
        for (std::size_t i = 0; i < m_; ++i) {
          if (alpha_[i] > 0.0 && alpha_[i] < C_) changed += examine(i);
        }
      }
      if (examine_all) {
        examine_all = false;
      } else if (changed == 0) {
        examine_all = true;
      }
    }
  }

  const std::vector<double>& alpha() const { return alpha_; }
  double bias() const { return bias_; }

 private:
  static constexpr double kTol = 1e-3;    // KKT tolerance
  static constexpr double kEps = 1e-12;   // minimal step
  static constexpr std::size_t kMaxPasses = 20000;

  // pinned: a row that must survive this fetch (references into the cache
  // stay valid for unevicted nodes).
  const std::vector<double>& kernel_row(std::size_t i, std::size_t pinned = SIZE_MAX) {
    auto it = cache_.find(i);
    if (it != cache_.end()) return it->second;
    if (cache_.size() >= cache_cap_) {
      for (auto victim = cache_order_.begin(); victim != cache_order_.end(); ++victim) {
        if (*victim != pinned) {
          cache_.erase(*victim);
          cache_order_.erase(victim);
          break;
        }
      }
    }
    std::vector<double> row(m_);
    const auto xi = X_.row(i);
    for (std::size_t j = 0; j < m_; ++j) row[j] = rbf_kernel(xi, X_.row(j), gamma_);
    cache_order_.push_back(i);
    return cache_.emplace(i, std::move(row)).first->second;
  }

  std::size_t examine(std::size_t i2) {
    const double z2 = z_[i2];
    const double a2 = alpha_[i2];
    const double r2 = errors_[i2] * z2;
    const bool violates = (r2 < -kTol && a2 < C_) || (r2 > kTol && a2 > 0.0);
    if (!violates) return 0;

    // First choice: maximal |E1 - E2| among non-bound points.
    std::size_t best = m_;
    double best_gap = -1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (alpha_[i] <= 0.0 || alpha_[i] >= C_) continue;
      const double gap = std::abs(errors_[i] - errors_[i2]);
      if (gap > best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    if (best < m_ && take_step(best, i2)) return 1;

    // Then all non-bound points, then everything, from random start offsets.
    const std::size_t start1 = static_cast<std::size_t>(rng_.bounded(m_));
    for (std::size_t k = 0; k < m_; ++k) {
      const std::size_t i1 = (start1 + k) % m_;
      if (alpha_[i1] > 0.0 && alpha_[i1] < C_ && take_step(i1, i2)) return 1;
    }
    const std::size_t start2 = static_cast<std::size_t>(rng_.bounded(m_));
    for (std::size_t k = 0; k < m_; ++k) {
      const std::size_t i1 = (start2 + k) % m_;
      if (take_step(i1, i2)) return 1;
    }
    return 0;
  }

  bool take_step(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return false;
    const double a1_old = alpha_[i1];
    const double a2_old = alpha_[i2];
    const double z1 = z_[i1];
    const double z2 = z_[i2];
    const double e1 = errors_[i1];
    const double e2 = errors_[i2];
    const double s = z1 * z2;

    double lo, hi;
    if (z1 != z2) {
      lo = std::max(0.0, a2_old - a1_old);
      hi = std::min(C_, C_ + a2_old - a1_old);
    } else {
      lo = std::max(0.0, a1_old + a2_old - C_);
      hi = std::min(C_, a1_old + a2_old);
    }
    if (lo >= hi) return false;

    const auto& row1 = kernel_row(i1);
    const double k11 = diag_[i1];
    const double k12 = row1[i2];
    const double k22 = diag_[i2];
    const double eta = k11 + k22 - 2.0 * k12;

    double a2 = 0.0;
    if (eta > 0.0) {
      a2 = a2_old + z2 * (e1 - e2) / eta;
      a2 = std::clamp(a2, lo, hi);
    } else {
      // Objective difference at the segment endpoints; g_i is the raw kernel
      // sum without the threshold.
      const double g1 = e1 + z1 - bias_;
      const double g2 = e2 + z2 - bias_;
      auto delta_obj = [&](double a2c) {
        const double a1c = a1_old + s * (a2_old - a2c);
        const double d1 = a1c - a1_old;
        const double d2 = a2c - a2_old;
        return z1 * d1 * g1 + z2 * d2 * g2 + 0.5 * d1 * d1 * k11 + 0.5 * d2 * d2 * k22 +
               s * d1 * d2 * k12 - d1 - d2;
      };
      const double obj_lo = delta_obj(lo);
      const double obj_hi = delta_obj(hi);
      if (obj_lo < obj_hi - kEps) {
        a2 = lo;
      } else if (obj_hi < obj_lo - kEps) {
        a2 = hi;
      } else {
        return false;
      }
    }
    if (std::abs(a2 - a2_old) < kEps * (a2 + a2_old + kEps)) return false;

    double a1 = a1_old + s * (a2_old - a2);
    if (a1 < 0.0) a1 = 0.0;
    if (a1 > C_) a1 = C_;

    const double d1 = a1 - a1_old;
    const double d2 = a2 - a2_old;
    const double b1 = bias_ - e1 - z1 * d1 * k11 - z2 * d2 * k12;
    const double b2 = bias_ - e2 - z1 * d1 * k12 - z2 * d2 * k22;
    double new_bias;
    if (a1 > 0.0 && a1 < C_) {
      new_bias = b1;
    } else if (a2 > 0.0 && a2 < C_) {
      new_bias = b2;
    } else {
      new_bias = (b1 + b2) / 2.0;
    }

    const auto& row2 = kernel_row(i2, /*pinned=*/i1);
    const double bias_shift = new_bias - bias_;
    for (std::size_t k = 0; k < m_; ++k) {
      errors_[k] += z1 * d1 * row1[k] + z2 * d2 * row2[k] + bias_shift;
    }
    alpha_[i1] = a1;
    alpha_[i2] = a2;
    bias_ = new_bias;
    return true;
  }

  const Matrix& X_;
  std::vector<int> z_;
  std::size_t m_;
  double C_;
  double gamma_;
  Rng rng_;
  std::vector<double> alpha_;
  std::vector<double> errors_;  // f(x_i) - z_i, maintained incrementally
  std::vector<double> diag_;
  double bias_ = 0.0;
  std::unordered_map<std::size_t, std::vector<double>> cache_;
  std::vector<std::size_t> cache_order_;
  std::size_t cache_cap_ = 8;
};

}  // namespace

RbfModel train_rbf(const Matrix& X, const LabelVector& y, double C, const GammaSpec& gamma,
                   std::uint64_t seed, std::vector<std::vector<double>>* head_alphas) {
  validate_training_input(X, y);
  if (C <= 0.0) throw ArgumentError("train_rbf: C must be positive");
  const std::vector<int> classes = sorted_classes(y);
  if (classes.size() < 2) throw ProtocolError("train_rbf: need at least two classes");

  RbfModel model;
  model.classes = classes;
  model.gamma = resolve_gamma(X, gamma);
  model.C = C;
  model.seed = seed;
  if (head_alphas) head_alphas->clear();

  const std::size_t n_heads = classes.size() == 2 ? 1 : classes.size();
  for (std::size_t h = 0; h < n_heads; ++h) {
    const int positive = classes.size() == 2 ? classes[1] : classes[h];
    std::vector<int> z(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) z[i] = y[i] == positive ? 1 : -1;
    SmoSolver solver(X, z, C, model.gamma, seed);
    solver.solve();

    const auto& alpha = solver.alpha();
    RbfHead head;
    head.bias = solver.bias();
    std::size_t n_sv = 0;
    for (const double a : alpha) n_sv += a > 1e-12 ? 1 : 0;
    head.support_vectors = Matrix(n_sv, X.cols());
    head.alpha_y.reserve(n_sv);
    std::size_t row = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] <= 1e-12) continue;
      for (std::size_t j = 0; j < X.cols(); ++j) head.support_vectors(row, j) = X(i, j);
      head.alpha_y.push_back(alpha[i] * static_cast<double>(z[i]));
      ++row;
    }
    model.heads.push_back(std::move(head));
    if (head_alphas) head_alphas->push_back(alpha);
  }
  return model;
}

std::vector<double> decision_values(const RbfModel& model, std::span<const double> x) {
  if (model.heads.empty()) throw ArgumentError("predict: model has no heads");
  if (x.size() != model.heads[0].support_vectors.cols() &&
      model.heads[0].support_vectors.rows() > 0) {
    throw ArgumentError("predict: feature dimension " + std::to_string(x.size()) +
                        " does not match model dimension " +
                        std::to_string(model.heads[0].support_vectors.cols()));
  }
  std::vector<double> scores;
  scores.reserve(model.heads.size());
  for (const auto& head : model.heads) {
    double f = head.bias;
    for (std::size_t i = 0; i < head.support_vectors.rows(); ++i) {
      f += head.alpha_y[i] * rbf_kernel(head.support_vectors.row(i), x, model.gamma);
    }
    scores.push_back(f);
  }
  return scores;
}

LabelVector predict(const RbfModel& model, const Matrix& X) {
  return predict_impl(model, X);
}

double kkt_violation(const Matrix& X, const std::vector<int>& z,
                     const std::vector<double>& alpha, double bias, double C,
                     double gamma) {
  double worst = 0.0;
  for (std::size_t i = 0; i < X.rows(); ++i) {
    double f = bias;
    for (std::size_t j = 0; j < X.rows(); ++j) {
      if (alpha[j] <= 0.0) continue;
      f += alpha[j] * static_cast<double>(z[j]) * rbf_kernel(X.row(j), X.row(i), gamma);
    }
    const double margin = static_cast<double>(z[i]) * f;
    double violation = 0.0;
    if (alpha[i] <= 1e-12) {
      violation = std::max(0.0, 1.0 - margin);
    } else if (alpha[i] >= C - 1e-12) {
      violation = std::max(0.0, margin - 1.0);
    } else {
      violation = std::abs(margin - 1.0);
    }
    worst = std::max(worst, violation);
  }
  return worst;
}

nlohmann::json to_json(const LinearModel& model) {
  nlohmann::json weights = nlohmann::json::array();
  for (std::size_t h = 0; h < model.weights.rows(); ++h) {
    weights.push_back(std::vector<double>(model.weights.row(h).begin(),
                                          model.weights.row(h).end()));
  }
  return {{"kind", "linear"},   {"classes", model.classes}, {"weights", weights},
          {"biases", model.biases}, {"C", model.C},         {"epochs", model.epochs},
          {"seed", model.seed}};
}

LinearModel linear_from_json(const nlohmann::json& j) {
  if (j.at("kind") != "linear") throw DataError("model file is not a linear model");
  LinearModel model;
  model.classes = j.at("classes").get<std::vector<int>>();
  const auto rows = j.at("weights").get<std::vector<std::vector<double>>>();
  model.weights = Matrix(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t h = 0; h < rows.size(); ++h) {
    for (std::size_t c = 0; c < rows[h].size(); ++c) model.weights(h, c) = rows[h][c];
  }
  model.biases = j.at("biases").get<std::vector<double>>();
  model.C = j.at("C").get<double>();
  model.epochs = j.at("epochs").get<int>();
  model.seed = j.at("seed").get<std::uint64_t>();
  return model;
}

nlohmann::json to_json(const RbfModel& model) {
  nlohmann::json heads = nlohmann::json::array();
  for (const auto& head : model.heads) {
    nlohmann::json svs = nlohmann::json::array();
    for (std::size_t i = 0; i < head.support_vectors.rows(); ++i) {
      svs.push_back(std::vector<double>(head.support_vectors.row(i).begin(),
                                        head.support_vectors.row(i).end()));
    }
    heads.push_back({{"support_vectors", svs}, {"alpha_y", head.alpha_y}, {"bias", head.bias}});
  }
  return {{"kind", "rbf"}, {"classes", model.classes}, {"gamma", model.gamma},
          {"C", model.C},  {"seed", model.seed},       {"heads", heads}};
}

RbfModel rbf_from_json(const nlohmann::json& j) {
  if (j.at("kind") != "rbf") throw DataError("model file is not an rbf model");
  RbfModel model;
  model.classes = j.at("classes").get<std::vector<int>>();
  model.gamma = j.at("gamma").get<double>();
  model.C = j.at("C").get<double>();
  model.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& jh : j.at("heads")) {
    RbfHead head;
    const auto rows = jh.at("support_vectors").get<std::vector<std::vector<double>>>();
    head.support_vectors = Matrix(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t c = 0; c < rows[i].size(); ++c) head.support_vectors(i, c) = rows[i][c];
    }
    head.alpha_y = jh.at("alpha_y").get<std::vector<double>>();
    head.bias = jh.at("bias").get<double>();
    model.heads.push_back(std::move(head));
  }
  return model;
}

namespace {

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace

void save_model(const std::filesystem::path& path, const LinearModel& model) {
  write_json_file(path, to_json(model));
}

void save_model(const std::filesystem::path& path, const RbfModel& model) {
  write_json_file(path, to_json(model));
}

LinearModel load_linear(const std::filesystem::path& path) {
  return linear_from_json(read_json_file(path));
}

RbfModel load_rbf(const std::filesystem::path& path) {
  return rbf_from_json(read_json_file(path));
}

}  // namespace neurochaos::svm
