#include "neurochaos/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "neurochaos/chaosfex.hpp"
#include "neurochaos/csv.hpp"
#include "neurochaos/errors.hpp"
#include "neurochaos/genome.hpp"
#include "neurochaos/rng.hpp"

namespace neurochaos::harness {

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::vector<int> sorted_classes(const LabelVector& y) {
  std::vector<int> classes(y);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  return classes;
}

Dataset take_rows(const Dataset& ds, const std::vector<std::size_t>& rows) {
  Dataset out;
  out.X = Matrix(rows.size(), ds.X.cols());
  out.y.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto src = ds.X.row(rows[r]);
    std::copy(src.begin(), src.end(), out.X.row(r).begin());
    out.y.push_back(ds.y[rows[r]]);
  }
  return out;
}

void finalize_aggregates(ExperimentReport& report) {
  if (report.units.empty()) return;
  double sum = 0.0;
  for (const auto& u : report.units) sum += u.report.macro_f1;
  report.mean_macro_f1 = sum / static_cast<double>(report.units.size());
  double var = 0.0;
  for (const auto& u : report.units) {
    const double d = u.report.macro_f1 - report.mean_macro_f1;
    var += d * d;
  }
  report.std_macro_f1 = std::sqrt(var / static_cast<double>(report.units.size()));
}

}  // namespace

MinMaxScaler fit_minmax(const Matrix& X) {
  MinMaxScaler s;
  s.lo.assign(X.cols(), 0.0);
  s.hi.assign(X.cols(), 0.0);
  for (std::size_t j = 0; j < X.cols(); ++j) {
    double lo = X(0, j), hi = X(0, j);
    for (std::size_t i = 1; i < X.rows(); ++i) {
      lo = std::min(lo, X(i, j));
      hi = std::max(hi, X(i, j));
    }
    s.lo[j] = lo;
    s.hi[j] = hi;
  }
  return s;
}

Matrix apply_minmax(const Matrix& X, const MinMaxScaler& scaler, bool clip) {
  if (X.cols() != scaler.lo.size()) throw ArgumentError("apply_minmax: dimension mismatch");
  Matrix out(X.rows(), X.cols());
  for (std::size_t j = 0; j < X.cols(); ++j) {
    const double lo = scaler.lo[j];
    const double span = scaler.hi[j] - lo;
    for (std::size_t i = 0; i < X.rows(); ++i) {
      double v = span > 0.0 ? (X(i, j) - lo) / span : 0.0;  // constant column -> 0
      if (clip) v = std::clamp(v, 0.0, 1.0);
      out(i, j) = v;
    }
  }
  return out;
}

namespace {

// Normalize + optional ChaosFEX + train + evaluate one train/test pair.
UnitResult run_single(const ExperimentConfig& config, const Dataset& train,
                      const Dataset& test, const std::string& label) {
  if (train.X.rows() == 0 || test.X.rows() == 0) {
    throw ProtocolError(label + ": empty train or test split");
  }
  if (train.X.cols() != test.X.cols()) {
    throw ProtocolError(label + ": train/test dimension mismatch");
  }
  const std::vector<int> train_classes = sorted_classes(train.y);
  {
    const std::vector<int> test_classes = sorted_classes(test.y);
    for (const int c : test_classes) {
      if (!std::binary_search(train_classes.begin(), train_classes.end(), c)) {
        throw ProtocolError(label + ": class " + std::to_string(c) + " missing from train");
      }
    }
  }

  const double t0 = now_seconds();
  Matrix ztr, zte;
  switch (config.normalization) {
    case Normalization::kFitOnTrain: {
      const MinMaxScaler scaler = fit_minmax(train.X);
      ztr = apply_minmax(train.X, scaler, false);
      zte = apply_minmax(test.X, scaler, true);
      break;
    }
    case Normalization::kPerDataset:
      ztr = apply_minmax(train.X, fit_minmax(train.X), false);
      zte = apply_minmax(test.X, fit_minmax(test.X), false);
      break;
    case Normalization::kNone:
      ztr = train.X;
      zte = test.X;
      break;
  }

  UnitResult unit;
  unit.label = label;
  Matrix ftr, fte;
  if (config.pipeline == Pipeline::kChaosFex) {
    if (!config.gls) throw ArgumentError("chaosfex pipeline needs gls parameters");
    auto ttr = chaosfex::transform(ztr, *config.gls, config.threads);
    auto tte = chaosfex::transform(zte, *config.gls, config.threads);
    unit.unfired_train_cells = ttr.unfired_cells;
    unit.unfired_test_cells = tte.unfired_cells;
    ftr = std::move(ttr.features);
    fte = std::move(tte.features);
  } else {
    ftr = std::move(ztr);
    fte = std::move(zte);
  }

  LabelVector pred;
  if (config.classifier.kind == ClassifierSpec::Kind::kLinear) {
    const auto model = svm::train_linear(ftr, train.y, config.classifier.C,
                                         config.classifier.epochs, config.seed);
    pred = svm::predict(model, fte);
  } else {
    const auto model =
        svm::train_rbf(ftr, train.y, config.classifier.C, config.classifier.gamma, config.seed);
    pred = svm::predict(model, fte);
  }
  unit.report = metrics::report(test.y, pred, train_classes);
  unit.seconds = now_seconds() - t0;
  return unit;
}

}  // namespace

ExperimentReport run_holdout(const ExperimentConfig& config, const Dataset& train,
                             const Dataset& test) {
  ExperimentReport report;
  report.config_echo = config_to_json(config);
  const double t0 = now_seconds();
  report.units.push_back(run_single(config, train, test, "holdout"));
  finalize_aggregates(report);
  report.total_seconds = now_seconds() - t0;
  return report;
}

std::vector<std::vector<std::size_t>> stratified_folds(const LabelVector& y, std::size_t k,
                                                       std::uint64_t seed) {
  if (k < 2) throw ArgumentError("stratified_folds: k must be >= 2");
  const std::vector<int> classes = sorted_classes(y);
  std::vector<std::vector<std::size_t>> folds(k);
  Rng base(seed);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] == classes[c]) indices.push_back(i);
    }
    if (indices.size() < k) {
      throw ProtocolError("stratified_folds: class " + std::to_string(classes[c]) + " has " +
                          std::to_string(indices.size()) + " samples, fewer than k=" +
                          std::to_string(k));
    }
    Rng rng = base.fork(c);
    rng.shuffle(indices);
    const std::size_t n = indices.size();
    const std::size_t chunk = n / k;
    const std::size_t rem = n % k;
    std::size_t offset = 0;
    for (std::size_t f = 0; f < k; ++f) {
      const std::size_t size = chunk + (f < rem ? 1 : 0);
      for (std::size_t i = 0; i < size; ++i) folds[f].push_back(indices[offset + i]);
      offset += size;
    }
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

ExperimentReport run_stratified_kfold(const ExperimentConfig& config, const Dataset& data,
                                      std::size_t k) {
  ExperimentReport report;
  report.config_echo = config_to_json(config);
  const double t0 = now_seconds();
  const auto folds = stratified_folds(data.y, k, config.seed);
  std::vector<bool> in_fold(data.y.size(), false);
  for (std::size_t f = 0; f < k; ++f) {
    for (const auto i : folds[f]) in_fold[i] = true;
    std::vector<std::size_t> train_rows;
    train_rows.reserve(data.y.size() - folds[f].size());
    for (std::size_t i = 0; i < data.y.size(); ++i) {
      if (!in_fold[i]) train_rows.push_back(i);
    }
    const Dataset train = take_rows(data, train_rows);
    const Dataset valid = take_rows(data, folds[f]);
    report.units.push_back(run_single(config, train, valid, "fold-" + std::to_string(f + 1)));
    for (const auto i : folds[f]) in_fold[i] = false;
  }
  finalize_aggregates(report);
  report.total_seconds = now_seconds() - t0;
  return report;
}

std::vector<std::size_t> draw_class_sample(const Dataset& pool,
                                           const std::vector<std::size_t>& class_rows,
                                           std::size_t count, bool quadrant_balanced,
                                           Rng& rng) {
  if (!quadrant_balanced) {
    auto picked = rng.sample_without_replacement(class_rows, count);
    std::sort(picked.begin(), picked.end());
    return picked;
  }
  std::array<std::vector<std::size_t>, 4> cells;
  for (const auto i : class_rows) {
    cells[datagen::quadrant_of(pool.X(i, 0), pool.X(i, 1))].push_back(i);
  }
  std::vector<std::size_t> quad_order{0, 1, 2, 3};
  rng.shuffle(quad_order);
  const std::size_t base = count / 4;
  const std::size_t rem = count % 4;
  std::vector<std::size_t> picked;
  std::set<std::size_t> picked_set;
  for (std::size_t pos = 0; pos < 4; ++pos) {
    const std::size_t quad = quad_order[pos];
    const std::size_t want = base + (pos < rem ? 1 : 0);
    const auto got = rng.sample_without_replacement(cells[quad],
                                                    std::min(want, cells[quad].size()));
    for (const auto i : got) {
      picked.push_back(i);
      picked_set.insert(i);
    }
  }
  if (picked.size() < count) {
    std::vector<std::size_t> rest;
    for (const auto i : class_rows) {
      if (!picked_set.count(i)) rest.push_back(i);
    }
    const auto extra = rng.sample_without_replacement(rest, count - picked.size());
    picked.insert(picked.end(), extra.begin(), extra.end());
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

ExperimentReport run_low_sample_trials(const ExperimentConfig& config, const Dataset& pool,
                                       const Dataset& test,
                                       const std::vector<std::size_t>& counts,
                                       std::size_t n_trials, bool quadrant_balanced,
                                       bool test_on_remainder) {
  if (counts.empty()) throw ArgumentError("run_low_sample_trials: empty count list");
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0 || (i > 0 && counts[i] <= counts[i - 1])) {
      throw ArgumentError("run_low_sample_trials: counts must be strictly increasing positive");
    }
  }
  if (n_trials < 1) throw ArgumentError("run_low_sample_trials: n_trials must be >= 1");
  if (quadrant_balanced && pool.X.cols() != 2) {
    throw ProtocolError("run_low_sample_trials: quadrant-balanced draws need 2-D data");
  }

  const std::vector<int> classes = sorted_classes(pool.y);
  std::unordered_map<int, std::vector<std::size_t>> rows_by_class;
  for (std::size_t i = 0; i < pool.y.size(); ++i) rows_by_class[pool.y[i]].push_back(i);
  // remainder mode needs at least one left-over sample per class so that the
  // evaluation split is never empty
  const std::size_t reserve = test_on_remainder ? 1 : 0;
  for (const int c : classes) {
    if (rows_by_class[c].size() < counts.back() + reserve) {
      throw ProtocolError("run_low_sample_trials: class " + std::to_string(c) + " pool has " +
                          std::to_string(rows_by_class[c].size()) + " samples, need " +
                          std::to_string(counts.back() + reserve));
    }
  }

  ExperimentReport report;
  report.config_echo = config_to_json(config);
  const double t0 = now_seconds();
  const Rng base(config.seed);
  for (std::size_t ci = 0; ci < counts.size(); ++ci) {
    const std::size_t count = counts[ci];
    CountSummary summary;
    summary.count = count;
    std::vector<double> f1s;
    f1s.reserve(n_trials);
    for (std::size_t trial = 0; trial < n_trials; ++trial) {
      Rng rng = base.fork((static_cast<std::uint64_t>(ci) << 32) | trial);
      std::vector<std::size_t> train_rows;
      for (std::size_t c = 0; c < classes.size(); ++c) {
        const auto picked = draw_class_sample(pool, rows_by_class[classes[c]], count,
                                              quadrant_balanced, rng);
        train_rows.insert(train_rows.end(), picked.begin(), picked.end());
      }
      const Dataset train = take_rows(pool, train_rows);
      const std::string label =
          "count-" + std::to_string(count) + "-trial-" + std::to_string(trial);
      UnitResult unit;
      if (test_on_remainder) {
        std::vector<bool> drawn(pool.y.size(), false);
        for (const auto i : train_rows) drawn[i] = true;
        std::vector<std::size_t> rest;
        rest.reserve(pool.y.size() - train_rows.size());
        for (std::size_t i = 0; i < pool.y.size(); ++i) {
          if (!drawn[i]) rest.push_back(i);
        }
        unit = run_single(config, train, take_rows(pool, rest), label);
      } else {
        unit = run_single(config, train, test, label);
      }
      unit.count = count;
      f1s.push_back(unit.report.macro_f1);
      report.units.push_back(std::move(unit));
    }
    double sum = 0.0;
    for (const double f : f1s) sum += f;
    summary.mean_macro_f1 = sum / static_cast<double>(f1s.size());
    double var = 0.0;
    for (const double f : f1s) var += (f - summary.mean_macro_f1) * (f - summary.mean_macro_f1);
    summary.std_macro_f1 = std::sqrt(var / static_cast<double>(f1s.size()));
    report.per_count.push_back(summary);
  }
  finalize_aggregates(report);
  report.total_seconds = now_seconds() - t0;
  return report;
}

std::vector<GridResult> grid_search(const std::vector<ExperimentConfig>& configs,
                                    const Dataset& data, std::size_t k) {
  if (configs.empty()) throw ArgumentError("grid_search: empty grid");
  std::vector<GridResult> results;
  results.reserve(configs.size());
  for (const auto& config : configs) {
    GridResult cell;
    cell.config = config;
    try {
      cell.mean_macro_f1 = run_stratified_kfold(config, data, k).mean_macro_f1;
    } catch (const std::exception& e) {
      cell.failed = true;
      cell.error = e.what();
      cell.mean_macro_f1 = -1.0;
    }
    results.push_back(std::move(cell));
  }
  std::stable_sort(results.begin(), results.end(), [](const GridResult& a, const GridResult& b) {
    return a.mean_macro_f1 > b.mean_macro_f1;  // ties keep grid order
  });
  return results;
}

std::vector<ExperimentConfig> noise_suite_configs(std::uint64_t seed) {
  const auto occd_train = datagen::CircleGenConfig{0.6, 0.4, 0.1, 2513, 2527, mix_seed(seed, 1)};
  const auto ccd_big = datagen::CircleGenConfig{0.6, 0.4, 0.01, 2513, 2527, mix_seed(seed, 2)};
  const auto ccd_train = datagen::CircleGenConfig{0.6, 0.4, 0.01, 2513, 2527, mix_seed(seed, 3)};
  const auto ccd_small = datagen::CircleGenConfig{0.6, 0.4, 0.01, 1087, 1073, mix_seed(seed, 4)};

  std::vector<ExperimentConfig> configs(4);
  for (std::size_t i = 0; i < 4; ++i) {
    auto& c = configs[i];
    c.name = "expt" + std::to_string(i + 1);
    c.source.kind = DataSource::Kind::kCircles;
    c.normalization = Normalization::kPerDataset;
    c.protocol.kind = Protocol::Kind::kHoldout;
    c.seed = seed;
  }
  // Expt-1/3 train on noisy OCCD and test on clean CCD; Expt-2/4 train and
  // test on CCD. ChaosFEX uses the robust hyperparameters, RBF the tuned
  // (C, gamma) pair.
  configs[0].source.train_circles = occd_train;
  configs[0].source.test_circles = ccd_big;
  configs[1].source.train_circles = ccd_train;
  configs[1].source.test_circles = ccd_small;
  configs[2].source.train_circles = occd_train;
  configs[2].source.test_circles = ccd_big;
  configs[3].source.train_circles = ccd_train;
  configs[3].source.test_circles = ccd_small;
  for (const std::size_t i : {0u, 1u}) {
    configs[i].pipeline = Pipeline::kChaosFex;
    configs[i].gls = chaos::GlsParams(0.34, 0.499, 0.18);
    configs[i].classifier.kind = ClassifierSpec::Kind::kLinear;
    configs[i].classifier.C = 1.0;
  }
  for (const std::size_t i : {2u, 3u}) {
    configs[i].pipeline = Pipeline::kRaw;
    configs[i].classifier.kind = ClassifierSpec::Kind::kRbf;
    configs[i].classifier.C = 1.0;
    configs[i].classifier.gamma = svm::GammaSpec::fixed(0.1);
  }
  for (auto& c : configs) c.source.has_test_circles = true;
  return configs;
}

std::array<ExperimentReport, 4> run_noise_suite(std::uint64_t seed) {
  const auto configs = noise_suite_configs(seed);
  std::array<ExperimentReport, 4> reports;
  for (std::size_t i = 0; i < 4; ++i) {
    reports[i] = run_config(configs[i]);
  }
  return reports;
}

std::pair<Dataset, std::optional<Dataset>> resolve_source(const ExperimentConfig& config) {
  const auto& src = config.source;
  switch (src.kind) {
    case DataSource::Kind::kCircles: {
      Dataset train = datagen::generate(src.train_circles);
      if (src.reduce_train) train = datagen::reduce_for_low_sample(train.X, train.y);
      std::optional<Dataset> test;
      if (src.has_test_circles) test = datagen::generate(src.test_circles);
      return {std::move(train), std::move(test)};
    }
    case DataSource::Kind::kCsv: {
      Dataset train = csv::read_dataset(src.train_csv);
      std::optional<Dataset> test;
      if (!src.test_csv.empty()) test = csv::read_dataset(src.test_csv);
      return {std::move(train), std::move(test)};
    }
    case DataSource::Kind::kFasta: {
      const auto records = genome::read_fasta(src.fasta);
      const auto processed = genome::preprocess(records, src.l_max, config.threads);
      if (src.labels_csv.empty()) throw DataError("fasta source needs a labels csv");
      const auto table = csv::read_file(src.labels_csv);
      if (table.header.size() != 2 || table.header[0] != "id" || table.header[1] != "label") {
        throw DataError(src.labels_csv + ": expected header id,label");
      }
      std::unordered_map<std::string, int> labels;
      for (const auto& row : table.rows) labels[row[0]] = csv::parse_int(row[1]);
      Dataset ds;
      ds.X = processed.features;
      ds.y.reserve(records.size());
      for (const auto& rec : records) {
        const auto it = labels.find(rec.id);
        if (it == labels.end()) throw DataError("no label for record '" + rec.id + "'");
        ds.y.push_back(it->second);
      }
      return {std::move(ds), std::nullopt};
    }
  }
  throw ArgumentError("resolve_source: unknown source kind");
}

ExperimentReport run_config(const ExperimentConfig& config) {
  auto [train, test] = resolve_source(config);
  switch (config.protocol.kind) {
    case Protocol::Kind::kHoldout:
      if (!test) throw ProtocolError(config.name + ": holdout needs a test set");
      return run_holdout(config, train, *test);
    case Protocol::Kind::kStratifiedKfold:
      return run_stratified_kfold(config, train, config.protocol.k);
    case Protocol::Kind::kRandomTrials: {
      const bool remainder = config.protocol.test_on_remainder || !test;
      if (remainder) {
        return run_low_sample_trials(config, train, Dataset{}, config.protocol.counts,
                                     config.protocol.n_trials,
                                     config.protocol.quadrant_balanced, true);
      }
      return run_low_sample_trials(config, train, *test, config.protocol.counts,
                                   config.protocol.n_trials, config.protocol.quadrant_balanced);
    }
  }
  throw ArgumentError("run_config: unknown protocol");
}

// ---- JSON (de)serialization ------------------------------------------------

namespace {

std::string pipeline_name(Pipeline p) { return p == Pipeline::kRaw ? "raw" : "chaosfex"; }

std::string normalization_name(Normalization n) {
  switch (n) {
    case Normalization::kFitOnTrain: return "fit_on_train";
    case Normalization::kPerDataset: return "per_dataset";
    case Normalization::kNone: return "none";
  }
  return "fit_on_train";
}

nlohmann::json circles_json(const datagen::CircleGenConfig& c) {
  return {{"r0", c.r0}, {"r1", c.r1}, {"alpha", c.alpha},
          {"n0", c.n0}, {"n1", c.n1}, {"seed", c.seed}};
}

datagen::CircleGenConfig circles_from_json(const nlohmann::json& j) {
  datagen::CircleGenConfig c;
  c.r0 = j.value("r0", 0.6);
  c.r1 = j.value("r1", 0.4);
  c.alpha = j.at("alpha").get<double>();
  c.n0 = j.at("n0").get<std::size_t>();
  c.n1 = j.at("n1").get<std::size_t>();
  c.seed = j.value("seed", std::uint64_t{0});
  return c;
}

}  // namespace

nlohmann::json config_to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["name"] = config.name;
  j["pipeline"] = pipeline_name(config.pipeline);
  if (config.gls) {
    j["gls"] = {{"q", config.gls->q},
                {"b", config.gls->b},
                {"epsilon", config.gls->epsilon},
                {"max_iters", config.gls->max_iters}};
  }
  nlohmann::json jc;
  jc["kind"] = config.classifier.kind == ClassifierSpec::Kind::kLinear ? "linear" : "rbf";
  jc["C"] = config.classifier.C;
  if (config.classifier.kind == ClassifierSpec::Kind::kLinear) {
    jc["epochs"] = config.classifier.epochs;
  } else if (config.classifier.gamma.is_scale) {
    jc["gamma"] = "scale";
  } else {
    jc["gamma"] = config.classifier.gamma.value;
  }
  j["classifier"] = jc;
  j["normalization"] = normalization_name(config.normalization);

  nlohmann::json jp;
  switch (config.protocol.kind) {
    case Protocol::Kind::kHoldout:
      jp["kind"] = "holdout";
      break;
    case Protocol::Kind::kStratifiedKfold:
      jp["kind"] = "stratified_kfold";
      jp["k"] = config.protocol.k;
      break;
    case Protocol::Kind::kRandomTrials:
      jp["kind"] = "random_trials";
      jp["counts"] = config.protocol.counts;
      jp["n_trials"] = config.protocol.n_trials;
      jp["quadrant_balanced"] = config.protocol.quadrant_balanced;
      jp["test_on_remainder"] = config.protocol.test_on_remainder;
      break;
  }
  j["protocol"] = jp;

  nlohmann::json js;
  switch (config.source.kind) {
    case DataSource::Kind::kCircles:
      js["kind"] = "circles";
      js["train"] = circles_json(config.source.train_circles);
      if (config.source.has_test_circles) js["test"] = circles_json(config.source.test_circles);
      js["reduce_train"] = config.source.reduce_train;
      break;
    case DataSource::Kind::kCsv:
      js["kind"] = "csv";
      js["train"] = config.source.train_csv;
      if (!config.source.test_csv.empty()) js["test"] = config.source.test_csv;
      break;
    case DataSource::Kind::kFasta:
      js["kind"] = "fasta";
      js["fasta"] = config.source.fasta;
      js["labels"] = config.source.labels_csv;
      js["l_max"] = config.source.l_max;
      break;
  }
  j["source"] = js;
  j["seed"] = config.seed;
  j["threads"] = config.threads;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig config;
  config.name = j.value("name", "experiment");
  const std::string pipeline = j.value("pipeline", "raw");
  if (pipeline == "raw") {
    config.pipeline = Pipeline::kRaw;
  } else if (pipeline == "chaosfex") {
    config.pipeline = Pipeline::kChaosFex;
  } else {
    throw ArgumentError("config: unknown pipeline '" + pipeline + "'");
  }
  if (j.contains("gls")) {
    const auto& g = j.at("gls");
    config.gls = chaos::GlsParams(g.at("q").get<double>(), g.at("b").get<double>(),
                                  g.at("epsilon").get<double>(),
                                  g.value("max_iters", std::size_t{10000}));
  }
  if (config.pipeline == Pipeline::kChaosFex && !config.gls) {
    throw ArgumentError("config: chaosfex pipeline requires 'gls'");
  }
  if (j.contains("classifier")) {
    const auto& jc = j.at("classifier");
    const std::string kind = jc.value("kind", "linear");
    if (kind == "linear") {
      config.classifier.kind = ClassifierSpec::Kind::kLinear;
      config.classifier.epochs = jc.value("epochs", 200);
    } else if (kind == "rbf") {
      config.classifier.kind = ClassifierSpec::Kind::kRbf;
      if (jc.contains("gamma")) {
        if (jc.at("gamma").is_string()) {
          if (jc.at("gamma") != "scale") {
            throw ArgumentError("config: gamma must be a number or \"scale\"");
          }
          config.classifier.gamma = svm::GammaSpec::scale();
        } else {
          config.classifier.gamma = svm::GammaSpec::fixed(jc.at("gamma").get<double>());
        }
      }
    } else {
      throw ArgumentError("config: unknown classifier kind '" + kind + "'");
    }
    config.classifier.C = jc.value("C", 1.0);
  }
  const std::string norm = j.value("normalization", "fit_on_train");
  if (norm == "fit_on_train") {
    config.normalization = Normalization::kFitOnTrain;
  } else if (norm == "per_dataset") {
    config.normalization = Normalization::kPerDataset;
  } else if (norm == "none") {
    config.normalization = Normalization::kNone;
  } else {
    throw ArgumentError("config: unknown normalization '" + norm + "'");
  }

  if (j.contains("protocol")) {
    const auto& jp = j.at("protocol");
    const std::string kind = jp.value("kind", "holdout");
    if (kind == "holdout") {
      config.protocol.kind = Protocol::Kind::kHoldout;
    } else if (kind == "stratified_kfold") {
      config.protocol.kind = Protocol::Kind::kStratifiedKfold;
      config.protocol.k = jp.at("k").get<std::size_t>();
      if (config.protocol.k < 2) throw ArgumentError("config: k must be >= 2");
    } else if (kind == "random_trials") {
      config.protocol.kind = Protocol::Kind::kRandomTrials;
      config.protocol.counts = jp.at("counts").get<std::vector<std::size_t>>();
      config.protocol.n_trials = jp.at("n_trials").get<std::size_t>();
      config.protocol.quadrant_balanced = jp.value("quadrant_balanced", false);
      config.protocol.test_on_remainder = jp.value("test_on_remainder", false);
    } else {
      throw ArgumentError("config: unknown protocol '" + kind + "'");
    }
  }

  if (j.contains("source")) {
    const auto& js = j.at("source");
    const std::string kind = js.at("kind").get<std::string>();
    if (kind == "circles") {
      config.source.kind = DataSource::Kind::kCircles;
      config.source.train_circles = circles_from_json(js.at("train"));
      if (js.contains("test")) {
        config.source.test_circles = circles_from_json(js.at("test"));
        config.source.has_test_circles = true;
      }
      config.source.reduce_train = js.value("reduce_train", false);
    } else if (kind == "csv") {
      config.source.kind = DataSource::Kind::kCsv;
      config.source.train_csv = js.at("train").get<std::string>();
      config.source.test_csv = js.value("test", "");
    } else if (kind == "fasta") {
      config.source.kind = DataSource::Kind::kFasta;
      config.source.fasta = js.at("fasta").get<std::string>();
      config.source.labels_csv = js.value("labels", "");
      config.source.l_max = js.value("l_max", std::size_t{31029});
    } else {
      throw ArgumentError("config: unknown source kind '" + kind + "'");
    }
  }
  config.seed = j.value("seed", std::uint64_t{0});
  config.threads = j.value("threads", 1u);
  return config;
}

nlohmann::json report_to_json(const ExperimentReport& report) {
  nlohmann::json units = nlohmann::json::array();
  for (const auto& u : report.units) {
    nlohmann::json ju = {{"unit", u.label},
                         {"report", metrics::to_json(u.report)},
                         {"seconds", u.seconds}};
    if (u.count) ju["count"] = u.count;
    if (u.unfired_train_cells || u.unfired_test_cells) {
      ju["unfired_train_cells"] = u.unfired_train_cells;
      ju["unfired_test_cells"] = u.unfired_test_cells;
    }
    units.push_back(std::move(ju));
  }
  nlohmann::json j = {{"config", report.config_echo},
                      {"units", units},
                      {"mean_macro_f1", report.mean_macro_f1},
                      {"std_macro_f1", report.std_macro_f1},
                      {"total_seconds", report.total_seconds}};
  if (!report.per_count.empty()) {
    nlohmann::json pc = nlohmann::json::array();
    for (const auto& s : report.per_count) {
      pc.push_back({{"count", s.count},
                    {"mean_macro_f1", s.mean_macro_f1},
                    {"std_macro_f1", s.std_macro_f1}});
    }
    j["per_count"] = pc;
  }
  return j;
}

void write_units_csv(const std::filesystem::path& path, const ExperimentReport& report) {
  csv::Table t;
  t.header = {"unit", "count", "accuracy", "macro_precision", "macro_recall", "macro_f1"};
  for (const auto& u : report.units) {
    t.rows.push_back({u.label, std::to_string(u.count), csv::format_double(u.report.accuracy),
                      csv::format_double(u.report.macro_precision),
                      csv::format_double(u.report.macro_recall),
                      csv::format_double(u.report.macro_f1)});
  }
  csv::write_file(path, t);
}

void write_counts_csv(const std::filesystem::path& path, const ExperimentReport& report) {
  csv::Table t;
  t.header = {"count", "mean_macro_f1", "std_macro_f1"};
  for (const auto& s : report.per_count) {
    t.rows.push_back({std::to_string(s.count), csv::format_double(s.mean_macro_f1),
                      csv::format_double(s.std_macro_f1)});
  }
  csv::write_file(path, t);
}

}  // namespace neurochaos::harness
