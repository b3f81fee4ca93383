#include "neurochaos/presets.hpp"

#include <fstream>

#include "neurochaos/csv.hpp"
#include "neurochaos/errors.hpp"
#include "neurochaos/rng.hpp"

namespace neurochaos::presets {

namespace {

using harness::ClassifierSpec;
using harness::DataSource;
using harness::ExperimentConfig;
using harness::Normalization;
using harness::Pipeline;
using harness::Protocol;

datagen::CircleGenConfig circles(double alpha, std::size_t n0, std::size_t n1,
                                 std::uint64_t seed) {
  datagen::CircleGenConfig c;
  c.alpha = alpha;
  c.n0 = n0;
  c.n1 = n1;
  c.seed = seed;
  return c;
}

// Reference split for the circle experiments: (2513, 2527) training and
// (1087, 1073) testing instances per class.
void set_occd_holdout_source(ExperimentConfig& config, std::uint64_t seed, double alpha) {
  config.source.kind = DataSource::Kind::kCircles;
  config.source.train_circles = circles(alpha, 2513, 2527, mix_seed(seed, 10));
  config.source.test_circles = circles(alpha, 1087, 1073, mix_seed(seed, 11));
  config.source.has_test_circles = true;
}

ExperimentConfig genome_fold_config(const std::string& name, std::size_t l_max,
                                    const Overrides& overrides, bool chaosfex_arm) {
  if (!overrides.input || !overrides.labels) {
    throw ArgumentError(name + ": genome presets need --input FASTA and --labels CSV");
  }
  ExperimentConfig config;
  config.name = name;
  config.source.kind = DataSource::Kind::kFasta;
  config.source.fasta = *overrides.input;
  config.source.labels_csv = *overrides.labels;
  config.source.l_max = l_max;
  // spectral preprocessing already yields unit-interval stimuli per record;
  // a second column-wise rescaling would blow up the noise-floor bins
  config.normalization = Normalization::kNone;
  config.protocol.kind = Protocol::Kind::kStratifiedKfold;
  config.protocol.k = 5;
  if (chaosfex_arm) {
    config.pipeline = Pipeline::kChaosFex;
    config.gls = gls_genome();
  }
  config.classifier.kind = ClassifierSpec::Kind::kLinear;
  return config;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"table7",          "noise-suite",         "expt2-optimum",
          "fig7-lowsample",  "fivefold-binary",     "fivefold-multiclass",
          "sars2-vs-sars1",  "fig10-lowsample"};
}

std::vector<harness::ExperimentConfig> preset_configs(const std::string& name,
                                                      const Overrides& overrides) {
  const std::uint64_t seed = overrides.seed.value_or(kDefaultSeed);
  std::vector<ExperimentConfig> configs;

  if (name == "table7") {
    ExperimentConfig fex;
    fex.name = "table7-chaosfex";
    set_occd_holdout_source(fex, seed, 0.1);
    fex.pipeline = Pipeline::kChaosFex;
    fex.gls = gls_occd_optimum();
    fex.classifier.kind = ClassifierSpec::Kind::kLinear;
    ExperimentConfig rbf;
    rbf.name = "table7-rbf";
    set_occd_holdout_source(rbf, seed, 0.1);
    rbf.classifier.kind = ClassifierSpec::Kind::kRbf;
    rbf.classifier.gamma = svm::GammaSpec::scale();
    configs = {fex, rbf};
  } else if (name == "noise-suite") {
    configs = harness::noise_suite_configs(seed);
  } else if (name == "expt2-optimum") {
    ExperimentConfig config;
    config.name = "expt2-optimum";
    set_occd_holdout_source(config, seed, 0.01);
    config.pipeline = Pipeline::kChaosFex;
    config.gls = gls_occd_optimum();
    config.classifier.kind = ClassifierSpec::Kind::kLinear;
    configs = {config};
  } else if (name == "fig7-lowsample") {
    ExperimentConfig config;
    config.name = "fig7-lowsample";
    set_occd_holdout_source(config, seed, 0.1);
    config.source.reduce_train = true;
    config.pipeline = Pipeline::kChaosFex;
    config.gls = gls_occd_optimum();
    config.classifier.kind = ClassifierSpec::Kind::kLinear;
    config.protocol.kind = Protocol::Kind::kRandomTrials;
    config.protocol.counts = {4, 36, 132, 388, 724};
    config.protocol.n_trials = 50;
    config.protocol.quadrant_balanced = true;
    configs = {config};
  } else if (name == "fivefold-binary" || name == "fivefold-multiclass") {
    configs = {genome_fold_config(name + "-chaosfex", 31029, overrides, true),
               genome_fold_config(name + "-svm", 31029, overrides, false)};
  } else if (name == "sars2-vs-sars1") {
    configs = {genome_fold_config("sars2-vs-sars1-chaosfex", 30129, overrides, true),
               genome_fold_config("sars2-vs-sars1-svm", 30129, overrides, false)};
  } else if (name == "fig10-lowsample") {
    ExperimentConfig config = genome_fold_config("fig10-lowsample", 30129, overrides, true);
    config.name = "fig10-lowsample";
    config.protocol.kind = Protocol::Kind::kRandomTrials;
    config.protocol.counts.clear();
    for (std::size_t c = 1; c <= 20; ++c) config.protocol.counts.push_back(c);
    config.protocol.n_trials = 1000;
    config.protocol.test_on_remainder = true;  // trials evaluate on the rest of the corpus
    configs = {config};
  } else {
    throw ArgumentError("unknown preset '" + name + "'");
  }

  for (auto& config : configs) {
    config.seed = seed;
    if (overrides.threads) config.threads = *overrides.threads;
    if (config.protocol.kind == Protocol::Kind::kRandomTrials) {
      if (overrides.counts) config.protocol.counts = *overrides.counts;
      if (overrides.n_trials) config.protocol.n_trials = *overrides.n_trials;
    }
  }
  return configs;
}

namespace {

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

nlohmann::json tool_stamp() {
  return {{"name", kToolName}, {"version", kToolVersion}};
}

}  // namespace

nlohmann::json run_config_to_dir(const harness::ExperimentConfig& config,
                                 const std::filesystem::path& outdir) {
  std::filesystem::create_directories(outdir);
  const harness::ExperimentReport report = harness::run_config(config);

  nlohmann::json echo = harness::config_to_json(config);
  echo["tool"] = tool_stamp();
  write_json_file(outdir / "config.json", echo);
  write_json_file(outdir / "report.json", harness::report_to_json(report));
  harness::write_units_csv(outdir / "units.csv", report);
  if (!report.per_count.empty()) harness::write_counts_csv(outdir / "counts.csv", report);

  {
    std::ofstream tables(outdir / "report.txt", std::ios::binary);
    for (const auto& unit : report.units) {
      tables << unit.label << '\n' << metrics::to_table(unit.report) << '\n';
    }
  }

  nlohmann::json summary = {{"name", config.name},
                            {"mean_macro_f1", report.mean_macro_f1},
                            {"std_macro_f1", report.std_macro_f1}};
  if (!report.units.empty()) {
    summary["accuracy"] = report.units.front().report.accuracy;
  }
  return summary;
}

nlohmann::json run_preset(const std::string& name, const Overrides& overrides,
                          const std::filesystem::path& outdir) {
  const auto configs = preset_configs(name, overrides);
  nlohmann::json arms = nlohmann::json::array();
  for (const auto& config : configs) {
    arms.push_back(run_config_to_dir(config, outdir / config.name));
  }
  nlohmann::json summary = {{"preset", name},
                            {"seed", overrides.seed.value_or(kDefaultSeed)},
                            {"tool", tool_stamp()},
                            {"arms", arms}};
  write_json_file(outdir / "summary.json", summary);
  return summary;
}

GridSpec grid_from_json(const nlohmann::json& j) {
  GridSpec spec;
  spec.base = harness::config_from_json(j.at("base"));
  spec.k = j.value("k", std::size_t{3});
  for (const auto& axis : j.at("axes")) {
    GridAxis a;
    a.param = axis.at("param").get<std::string>();
    if (axis.contains("values")) {
      for (const auto& v : axis.at("values")) a.values.push_back(v);
    } else {
      // arithmetic range: {"from": 0.01, "to": 0.2, "step": 0.001}
      const double from = axis.at("from").get<double>();
      const double to = axis.at("to").get<double>();
      const double step = axis.at("step").get<double>();
      if (step <= 0.0) throw ArgumentError("grid: step must be positive");
      for (std::size_t i = 0;; ++i) {
        const double v = from + static_cast<double>(i) * step;
        if (v > to + step * 1e-9) break;
        a.values.push_back(v);
      }
    }
    if (a.values.empty()) throw ArgumentError("grid: axis '" + a.param + "' has no values");
    spec.axes.push_back(std::move(a));
  }
  if (spec.axes.empty()) throw ArgumentError("grid: no axes");
  return spec;
}

namespace {

void apply_axis(harness::ExperimentConfig& config, const std::string& param,
                const nlohmann::json& value) {
  if (param == "epsilon" || param == "q" || param == "b") {
    if (!config.gls) throw ArgumentError("grid: '" + param + "' needs a chaosfex base config");
    const double v = value.get<double>();
    chaos::GlsParams g = *config.gls;
    if (param == "epsilon") {
      config.gls = chaos::GlsParams(g.q, g.b, v, g.max_iters);
    } else if (param == "q") {
      config.gls = chaos::GlsParams(v, g.b, g.epsilon, g.max_iters);
    } else {
      config.gls = chaos::GlsParams(g.q, v, g.epsilon, g.max_iters);
    }
  } else if (param == "C") {
    config.classifier.C = value.get<double>();
  } else if (param == "gamma") {
    if (value.is_string()) {
      config.classifier.gamma = svm::GammaSpec::scale();
    } else {
      config.classifier.gamma = svm::GammaSpec::fixed(value.get<double>());
    }
  } else {
    throw ArgumentError("grid: unknown parameter '" + param + "'");
  }
}

}  // namespace

std::vector<harness::ExperimentConfig> expand_grid(const GridSpec& spec) {
  std::vector<harness::ExperimentConfig> configs{spec.base};
  for (const auto& axis : spec.axes) {
    std::vector<harness::ExperimentConfig> next;
    next.reserve(configs.size() * axis.values.size());
    for (const auto& config : configs) {
      for (const auto& value : axis.values) {
        harness::ExperimentConfig cell = config;
        apply_axis(cell, axis.param, value);
        next.push_back(std::move(cell));
      }
    }
    configs = std::move(next);
  }
  for (std::size_t i = 0; i < configs.size(); ++i) {
    configs[i].name = spec.base.name + "-cell" + std::to_string(i);
  }
  return configs;
}

nlohmann::json run_grid_to_dir(const GridSpec& spec, const std::filesystem::path& outdir) {
  std::filesystem::create_directories(outdir);
  const auto configs = expand_grid(spec);
  auto [data, test] = harness::resolve_source(spec.base);
  (void)test;
  const auto ranked = harness::grid_search(configs, data, spec.k);

  csv::Table t;
  t.header = {"rank", "name"};
  for (const auto& axis : spec.axes) t.header.push_back(axis.param);
  t.header.push_back("mean_macro_f1");
  t.header.push_back("failed");
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    std::vector<std::string> row{std::to_string(r + 1), ranked[r].config.name};
    for (const auto& axis : spec.axes) {
      if (axis.param == "epsilon") {
        row.push_back(csv::format_double(ranked[r].config.gls->epsilon));
      } else if (axis.param == "q") {
        row.push_back(csv::format_double(ranked[r].config.gls->q));
      } else if (axis.param == "b") {
        row.push_back(csv::format_double(ranked[r].config.gls->b));
      } else if (axis.param == "C") {
        row.push_back(csv::format_double(ranked[r].config.classifier.C));
      } else {
        row.push_back(ranked[r].config.classifier.gamma.is_scale
                          ? "scale"
                          : csv::format_double(ranked[r].config.classifier.gamma.value));
      }
    }
    row.push_back(csv::format_double(ranked[r].mean_macro_f1));
    row.push_back(ranked[r].failed ? "1" : "0");
    t.rows.push_back(std::move(row));
  }
  csv::write_file(outdir / "grid.csv", t);

  nlohmann::json echo = harness::config_to_json(spec.base);
  echo["tool"] = tool_stamp();
  write_json_file(outdir / "config.json", echo);

  nlohmann::json best;
  if (!ranked.empty() && !ranked.front().failed) {
    best = {{"name", ranked.front().config.name},
            {"mean_macro_f1", ranked.front().mean_macro_f1},
            {"config", harness::config_to_json(ranked.front().config)}};
  }
  nlohmann::json summary = {{"grid_cells", ranked.size()}, {"best", best}, {"tool", tool_stamp()}};
  write_json_file(outdir / "summary.json", summary);
  return summary;
}

}  // namespace neurochaos::presets
