#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "neurochaos/chaos.hpp"
#include "neurochaos/datagen.hpp"
#include "neurochaos/matrix.hpp"
#include "neurochaos/metrics.hpp"
#include "neurochaos/rng.hpp"
#include "neurochaos/svm.hpp"

namespace neurochaos::harness {

enum class Pipeline { kRaw, kChaosFex };

// How features are scaled before the pipeline. kFitOnTrain is the default:
// per-feature min-max fitted on the training split, applied to the test
// split and clipped to [0,1]. kPerDataset scales each split with its own
// statistics, which is what the distribution-shift (noise) protocols use.
enum class Normalization { kFitOnTrain, kPerDataset, kNone };

struct ClassifierSpec {
  enum class Kind { kLinear, kRbf };
  Kind kind = Kind::kLinear;
  double C = 1.0;
  int epochs = 200;                                // linear
  svm::GammaSpec gamma = svm::GammaSpec::scale();  // rbf
};

struct Protocol {
  enum class Kind { kHoldout, kStratifiedKfold, kRandomTrials };
  Kind kind = Kind::kHoldout;
  std::size_t k = 5;                  // stratified k-fold
  std::vector<std::size_t> counts;    // random trials: samples per class
  std::size_t n_trials = 1;
  bool quadrant_balanced = false;     // 2-D pools: spread draws over quadrants
  bool test_on_remainder = false;     // random trials: evaluate on pool minus the draw
};

// Where the experiment data comes from: seeded circle generators, dataset
// CSV files, or a FASTA corpus plus a label CSV.
struct DataSource {
  enum class Kind { kCircles, kCsv, kFasta };
  Kind kind = Kind::kCsv;

  datagen::CircleGenConfig train_circles{};
  datagen::CircleGenConfig test_circles{};
  bool has_test_circles = false;
  bool reduce_train = false;  // 30% per-quadrant pool reduction

  std::string train_csv;
  std::string test_csv;

  std::string fasta;
  std::string labels_csv;
  std::size_t l_max = 31029;
};

struct ExperimentConfig {
  std::string name = "experiment";
  DataSource source;
  Pipeline pipeline = Pipeline::kRaw;
  std::optional<chaos::GlsParams> gls;  // required for kChaosFex
  ClassifierSpec classifier;
  Normalization normalization = Normalization::kFitOnTrain;
  Protocol protocol;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

struct UnitResult {
  std::string label;       // "holdout", "fold-3", "count-4-trial-17"
  std::size_t count = 0;   // samples per class (random trials), else 0
  metrics::ClassificationReport report;
  std::size_t unfired_train_cells = 0;
  std::size_t unfired_test_cells = 0;
  double seconds = 0.0;
};

struct CountSummary {
  std::size_t count = 0;
  double mean_macro_f1 = 0.0;
  double std_macro_f1 = 0.0;  // population standard deviation
};

struct ExperimentReport {
  nlohmann::json config_echo;
  std::vector<UnitResult> units;
  double mean_macro_f1 = 0.0;
  double std_macro_f1 = 0.0;
  std::vector<CountSummary> per_count;  // random-trials protocols only
  double total_seconds = 0.0;
};

nlohmann::json report_to_json(const ExperimentReport& report);

// Flat CSV, one row per fold/trial. Timings are kept out so reruns with the
// same seed are byte-identical.
void write_units_csv(const std::filesystem::path& path, const ExperimentReport& report);
void write_counts_csv(const std::filesystem::path& path, const ExperimentReport& report);

// Per-feature min-max scaling.
struct MinMaxScaler {
  std::vector<double> lo;
  std::vector<double> hi;
};
MinMaxScaler fit_minmax(const Matrix& X);
Matrix apply_minmax(const Matrix& X, const MinMaxScaler& scaler, bool clip);

// Deterministic stratified fold assignment: per-class index chunks whose
// sizes differ by at most one, shuffled with the given seed. Returns the
// validation index list of every fold, ascending within a fold.
std::vector<std::vector<std::size_t>> stratified_folds(const LabelVector& y, std::size_t k,
                                                       std::uint64_t seed);

ExperimentReport run_holdout(const ExperimentConfig& config, const Dataset& train,
                             const Dataset& test);

ExperimentReport run_stratified_kfold(const ExperimentConfig& config, const Dataset& data,
                                      std::size_t k);

// When test_on_remainder is set the test argument is ignored and every trial
// evaluates on the pool rows left out of its draw (the single-corpus
// protocol); otherwise the fixed test set is used throughout.
ExperimentReport run_low_sample_trials(const ExperimentConfig& config, const Dataset& pool,
                                       const Dataset& test,
                                       const std::vector<std::size_t>& counts,
                                       std::size_t n_trials, bool quadrant_balanced,
                                       bool test_on_remainder = false);

// One per-class draw of the low-sample protocol. Quadrant-balanced mode
// splits the count evenly over the four quadrants, spreads any remainder via
// a seeded quadrant shuffle, and falls back to the rest of the class pool
// when a quadrant runs short. Returned indices are ascending.
std::vector<std::size_t> draw_class_sample(const Dataset& pool,
                                           const std::vector<std::size_t>& class_rows,
                                           std::size_t count, bool quadrant_balanced, Rng& rng);

struct GridResult {
  ExperimentConfig config;
  double mean_macro_f1 = 0.0;
  bool failed = false;
  std::string error;
};

// Evaluates every config with stratified k-fold crossvalidation and returns
// them ranked by mean macro F1, ties kept in grid order. Per-cell failures
// are recorded, not fatal.
std::vector<GridResult> grid_search(const std::vector<ExperimentConfig>& configs,
                                    const Dataset& data, std::size_t k);

// The four noise-robustness experiments (shared generated datasets, derived
// seeds): 1 chaosfex OCCD->CCD, 2 chaosfex CCD->CCD, 3 rbf OCCD->CCD,
// 4 rbf CCD->CCD.
std::vector<ExperimentConfig> noise_suite_configs(std::uint64_t seed);
std::array<ExperimentReport, 4> run_noise_suite(std::uint64_t seed);

// Resolves the configured data source into train (+ optional test) sets.
std::pair<Dataset, std::optional<Dataset>> resolve_source(const ExperimentConfig& config);

// Dispatches on the configured protocol after resolving the source.
ExperimentReport run_config(const ExperimentConfig& config);

}  // namespace neurochaos::harness
