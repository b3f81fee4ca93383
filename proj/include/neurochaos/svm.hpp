#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "neurochaos/matrix.hpp"

namespace neurochaos::svm {

// Linear SVM trained with a primal stochastic sub-gradient solver (Pegasos
// step schedule, regularized intercept via feature augmentation). Binary
// problems use a single hyperplane; multiclass is one-vs-rest with argmax
// ties resolved to the lowest class index.
struct LinearModel {
  std::vector<int> classes;  // sorted; binary keeps one head for classes[1]
  Matrix weights;            // heads x d
  std::vector<double> biases;
  double C = 1.0;
  int epochs = 200;
  std::uint64_t seed = 0;
};

LinearModel train_linear(const Matrix& X, const LabelVector& y, double C = 1.0,
                         int epochs = 200, std::uint64_t seed = 0,
                         std::vector<double>* epoch_objectives = nullptr);

// RBF-kernel SVM trained with SMO (working set of two). Binary at the solver
// level; one-vs-rest above it.
struct GammaSpec {
  bool is_scale = false;
  double value = 0.0;

  static GammaSpec scale() { return {true, 0.0}; }
  static GammaSpec fixed(double g) { return {false, g}; }
};

struct RbfHead {
  Matrix support_vectors;
  std::vector<double> alpha_y;  // alpha_i * y_i per support vector
  double bias = 0.0;
};

struct RbfModel {
  std::vector<int> classes;  // sorted; binary keeps one head for classes[1]
  std::vector<RbfHead> heads;
  double gamma = 0.0;  // resolved value
  double C = 1.0;
  std::uint64_t seed = 0;
};

// gamma "scale" resolves to 1 / (d * Var(X)) with the population variance of
// all training matrix entries.
double resolve_gamma(const Matrix& X, const GammaSpec& gamma);

// head_alphas, when given, receives the full dual vector of every head
// (training-set sized; zero entries for non-support points).
RbfModel train_rbf(const Matrix& X, const LabelVector& y, double C,
                   const GammaSpec& gamma, std::uint64_t seed = 0,
                   std::vector<std::vector<double>>* head_alphas = nullptr);

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma);

LabelVector predict(const LinearModel& model, const Matrix& X);
LabelVector predict(const RbfModel& model, const Matrix& X);

// Per-head decision values for one sample (binary models have one head).
std::vector<double> decision_values(const LinearModel& model, std::span<const double> x);
std::vector<double> decision_values(const RbfModel& model, std::span<const double> x);

// Maximum KKT violation of a binary subproblem given its full dual vector;
// z holds the +-1 labels of that subproblem. Used to check SMO convergence.
double kkt_violation(const Matrix& X, const std::vector<int>& z,
                     const std::vector<double>& alpha, double bias, double C,
                     double gamma);

nlohmann::json to_json(const LinearModel& model);
nlohmann::json to_json(const RbfModel& model);
LinearModel linear_from_json(const nlohmann::json& j);
RbfModel rbf_from_json(const nlohmann::json& j);

// Tagged save/load ("kind": "linear" | "rbf").
void save_model(const std::filesystem::path& path, const LinearModel& model);
void save_model(const std::filesystem::path& path, const RbfModel& model);
LinearModel load_linear(const std::filesystem::path& path);
RbfModel load_rbf(const std::filesystem::path& path);

}  // namespace neurochaos::svm
