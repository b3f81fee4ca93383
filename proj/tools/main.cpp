#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "neurochaos/chaos.hpp"
#include "neurochaos/chaosfex.hpp"
#include "neurochaos/csv.hpp"
#include "neurochaos/datagen.hpp"
#include "neurochaos/errors.hpp"
#include "neurochaos/genome.hpp"
#include "neurochaos/harness.hpp"
#include "neurochaos/presets.hpp"
#include "neurochaos/rng.hpp"

namespace fs = std::filesystem;
using namespace neurochaos;

namespace {

void write_json_file(const fs::path& path, const nlohmann::json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

nlohmann::json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  nlohmann::json j;
  in >> j;
  return j;
}

nlohmann::json tool_stamp() {
  return {{"name", presets::kToolName}, {"version", presets::kToolVersion}};
}

struct GenDataArgs {
  std::string preset;
  double alpha = 0.1;
  double r0 = 0.6, r1 = 0.4;
  std::size_t n0 = 2513, n1 = 2527;
  std::uint64_t seed = presets::kDefaultSeed;
  std::string outdir = "out";
};

int cmd_gen_data(const GenDataArgs& args) {
  datagen::CircleGenConfig config;
  config.r0 = args.r0;
  config.r1 = args.r1;
  config.alpha = args.alpha;
  config.n0 = args.n0;
  config.n1 = args.n1;
  config.seed = args.seed;
  std::string stem = "dataset";
  if (args.preset == "occd") {
    config.alpha = 0.1;
    stem = "occd";
  } else if (args.preset == "ccd") {
    config.alpha = 0.01;
    stem = "ccd";
  } else if (!args.preset.empty()) {
    throw ArgumentError("gen-data: unknown preset '" + args.preset + "' (occd|ccd)");
  }

  const Dataset ds = datagen::generate(config);
  const fs::path outdir(args.outdir);
  fs::create_directories(outdir);
  csv::write_dataset(outdir / (stem + ".csv"), ds, {"f1", "f2"});

  nlohmann::json manifest = {{"tool", tool_stamp()},
                             {"preset", args.preset.empty() ? "custom" : args.preset},
                             {"r0", config.r0},
                             {"r1", config.r1},
                             {"alpha", config.alpha},
                             {"n0", config.n0},
                             {"n1", config.n1},
                             {"seed", config.seed},
                             {"rows", ds.X.rows()},
                             {"overlap_fraction", datagen::radial_overlap_fraction(ds.X, ds.y)}};
  write_json_file(outdir / (stem + "_manifest.json"), manifest);
  std::cout << "wrote " << (outdir / (stem + ".csv")).string() << " (" << ds.X.rows()
            << " rows)\n";
  return 0;
}

struct ExtractArgs {
  std::string input;
  bool fasta = false;
  std::size_t l_max = 31029;
  double q = 0.34, b = 0.499, epsilon = 0.18;
  std::size_t max_iters = 10000;
  bool apply_chaosfex = false;
  bool normalize = false;
  unsigned threads = 1;
  std::string outdir = "out";
};

int cmd_extract(const ExtractArgs& args) {
  const fs::path outdir(args.outdir);
  fs::create_directories(outdir);

  Matrix data;
  LabelVector labels;
  bool have_labels = false;

  const bool is_fasta = args.fasta || fs::path(args.input).extension() == ".fasta" ||
                        fs::path(args.input).extension() == ".fa";
  if (is_fasta) {
    const auto records = genome::read_fasta(args.input);
    const auto processed = genome::preprocess(records, args.l_max, args.threads);
    data = processed.features;
    write_json_file(outdir / "genome_manifest.json", genome::manifest_json(processed));
    csv::Table t;
    t.header.push_back("id");
    for (std::size_t j = 0; j < processed.l_max; ++j) t.header.push_back("x" + std::to_string(j));
    for (std::size_t i = 0; i < processed.features.rows(); ++i) {
      std::vector<std::string> row{processed.records[i].id};
      for (std::size_t j = 0; j < processed.features.cols(); ++j) {
        row.push_back(csv::format_double(processed.features(i, j)));
      }
      t.rows.push_back(std::move(row));
    }
    csv::write_file(outdir / "spectra.csv", t);
  } else {
    const csv::Table t = csv::read_file(args.input);
    const bool with_label = !t.header.empty() && t.header.back() == "label";
    const std::size_t d = t.header.size() - (with_label ? 1 : 0);
    data = Matrix(t.rows.size(), d);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      for (std::size_t j = 0; j < d; ++j) data(i, j) = csv::parse_double(t.rows[i][j]);
      if (with_label) labels.push_back(csv::parse_int(t.rows[i][d]));
    }
    have_labels = with_label;
  }

  nlohmann::json echo = {{"tool", tool_stamp()},
                         {"input", args.input},
                         {"fasta", is_fasta},
                         {"normalize", args.normalize},
                         {"threads", args.threads}};

  if (args.apply_chaosfex || !is_fasta) {
    Matrix stimuli = data;
    if (args.normalize) {
      stimuli = harness::apply_minmax(data, harness::fit_minmax(data), false);
    }
    const chaos::GlsParams params(args.q, args.b, args.epsilon, args.max_iters);
    const auto transformed = chaosfex::transform(stimuli, params, args.threads);
    echo["gls"] = {{"q", params.q},
                   {"b", params.b},
                   {"epsilon", params.epsilon},
                   {"max_iters", params.max_iters}};
    echo["unfired_cells"] = transformed.unfired_cells;

    auto header = chaosfex::feature_header(stimuli.cols());
    if (have_labels) {
      csv::Table t;
      t.header = header;
      t.header.push_back("label");
      for (std::size_t i = 0; i < transformed.features.rows(); ++i) {
        std::vector<std::string> row;
        for (std::size_t j = 0; j < transformed.features.cols(); ++j) {
          row.push_back(csv::format_double(transformed.features(i, j)));
        }
        row.push_back(std::to_string(labels[i]));
        t.rows.push_back(std::move(row));
      }
      csv::write_file(outdir / "features.csv", t);
    } else {
      csv::write_matrix(outdir / "features.csv", transformed.features, header);
    }
    std::cout << "wrote " << (outdir / "features.csv").string() << " ("
              << transformed.features.rows() << " x " << transformed.features.cols() << ")\n";
  }
  write_json_file(outdir / "config.json", echo);
  return 0;
}

struct ExperimentArgs {
  std::string preset;
  std::string config_path;
  std::string input;
  std::string labels;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::size_t> n_trials;
  std::vector<std::size_t> counts;
  std::string outdir = "out";
};

int cmd_experiment(const ExperimentArgs& args) {
  if (args.preset.empty() == args.config_path.empty()) {
    throw ArgumentError("experiment: give exactly one of --preset or --config");
  }
  const fs::path outdir(args.outdir);

  nlohmann::json summary;
  if (!args.preset.empty()) {
    presets::Overrides overrides;
    overrides.seed = args.seed;
    overrides.threads = args.threads;
    overrides.n_trials = args.n_trials;
    if (!args.counts.empty()) overrides.counts = args.counts;
    if (!args.input.empty()) overrides.input = args.input;
    if (!args.labels.empty()) overrides.labels = args.labels;
    summary = presets::run_preset(args.preset, overrides, outdir);
  } else {
    const nlohmann::json j = read_json_file(args.config_path);
    if (j.contains("grid")) {
      presets::GridSpec spec = presets::grid_from_json(j.at("grid"));
      if (args.seed) spec.base.seed = *args.seed;
      if (args.threads) spec.base.threads = *args.threads;
      summary = presets::run_grid_to_dir(spec, outdir);
    } else {
      harness::ExperimentConfig config = harness::config_from_json(j);
      if (args.seed) config.seed = *args.seed;
      if (args.threads) config.threads = *args.threads;
      if (args.n_trials) config.protocol.n_trials = *args.n_trials;
      if (!args.counts.empty()) config.protocol.counts = args.counts;
      if (!args.input.empty()) config.source.fasta = args.input;
      if (!args.labels.empty()) config.source.labels_csv = args.labels;
      summary = presets::run_config_to_dir(config, outdir);
    }
  }
  std::cout << summary.dump(2) << '\n';
  return 0;
}

struct UatArgs {
  std::size_t length = 16;
  double epsilon_total = 0.1;
  double q = 0.34, b = 0.499;
  std::size_t max_iters = 1000000;
  std::uint64_t seed = presets::kDefaultSeed;
  std::string outdir = "out";
};

int cmd_uat(const UatArgs& args) {
  if (args.length == 0) throw ArgumentError("uat: length must be positive");
  if (args.epsilon_total <= 0.0) throw ArgumentError("uat: epsilon-total must be positive");

  const double eta = args.epsilon_total / (2.0 * static_cast<double>(args.length));
  const chaos::GlsParams params(args.q, args.b, eta, args.max_iters);

  Rng rng(args.seed);
  std::vector<double> f(args.length);
  for (auto& v : f) v = rng.uniform();

  nlohmann::json report = {{"tool", tool_stamp()},
                           {"L", args.length},
                           {"epsilon_total", args.epsilon_total},
                           {"per_neuron_epsilon", eta},
                           {"q", args.q},
                           {"b", args.b},
                           {"max_iters", args.max_iters},
                           {"seed", args.seed}};
  try {
    const auto result = chaos::approximate_function(f, params);
    nlohmann::json neurons = nlohmann::json::array();
    for (std::size_t i = 0; i < f.size(); ++i) {
      neurons.push_back({{"stimulus", f[i]},
                         {"approximation", result.approximations[i]},
                         {"firing_time", result.firing_times[i]}});
    }
    report["neurons"] = neurons;
    report["total_error"] = result.total_error;
    report["bound"] = args.epsilon_total;
    report["satisfied"] = result.total_error < args.epsilon_total;
    std::cout << "L=" << args.length << " total_error=" << result.total_error
              << " bound=" << args.epsilon_total
              << (result.total_error < args.epsilon_total ? "  OK" : "  VIOLATED") << '\n';
  } catch (const ApproximationError& e) {
    report["error"] = e.what();
    report["unfired_indices"] = e.unfired_indices;
    write_json_file(fs::path(args.outdir) / "uat.json", report);
    throw;
  }
  write_json_file(fs::path(args.outdir) / "uat.json", report);
  std::cout << "wrote " << (fs::path(args.outdir) / "uat.json").string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neurochaos learning pipeline: chaotic feature extraction + SVM"};
  app.require_subcommand(1);

  GenDataArgs gen_args;
  auto* gen = app.add_subcommand("gen-data", "Generate a concentric-circle dataset");
  gen->add_option("--preset", gen_args.preset, "occd (alpha=0.1) or ccd (alpha=0.01)");
  gen->add_option("--alpha", gen_args.alpha, "noise amplitude");
  gen->add_option("--r0", gen_args.r0, "class-0 radius");
  gen->add_option("--r1", gen_args.r1, "class-1 radius");
  gen->add_option("--n0", gen_args.n0, "class-0 samples");
  gen->add_option("--n1", gen_args.n1, "class-1 samples");
  gen->add_option("--seed", gen_args.seed, "rng seed");
  gen->add_option("-o,--out", gen_args.outdir, "output directory");

  ExtractArgs extract_args;
  auto* extract = app.add_subcommand("extract", "ChaosFEX / genome feature extraction");
  extract->add_option("--input", extract_args.input, "dataset CSV or FASTA file")->required();
  extract->add_flag("--fasta", extract_args.fasta, "force FASTA parsing");
  extract->add_option("--lmax", extract_args.l_max, "spectral padding length");
  extract->add_option("--q", extract_args.q, "initial neural activity");
  extract->add_option("--b", extract_args.b, "discrimination threshold");
  extract->add_option("--epsilon", extract_args.epsilon, "halt neighbourhood half-width");
  extract->add_option("--max-iters", extract_args.max_iters, "trajectory cap");
  extract->add_flag("--chaosfex", extract_args.apply_chaosfex,
                    "apply ChaosFEX after genome preprocessing");
  extract->add_flag("--normalize", extract_args.normalize, "min-max normalize CSV input first");
  extract->add_option("--threads", extract_args.threads, "worker threads");
  extract->add_option("-o,--out", extract_args.outdir, "output directory");

  ExperimentArgs exp_args;
  auto* exp = app.add_subcommand("experiment", "Run an experiment preset or config");
  exp->add_option("--preset", exp_args.preset,
                  "one of: table7 noise-suite expt2-optimum fig7-lowsample fivefold-binary "
                  "fivefold-multiclass sars2-vs-sars1 fig10-lowsample");
  exp->add_option("--config", exp_args.config_path, "experiment or grid config JSON");
  exp->add_option("--input", exp_args.input, "FASTA corpus (genome presets)");
  exp->add_option("--labels", exp_args.labels, "id,label CSV (genome presets)");
  std::uint64_t seed_opt = 0;
  auto* seed_flag = exp->add_option("--seed", seed_opt, "seed override");
  unsigned threads_opt = 0;
  auto* threads_flag = exp->add_option("--threads", threads_opt, "worker threads");
  std::size_t trials_opt = 0;
  auto* trials_flag = exp->add_option("--trials", trials_opt, "trial count override");
  exp->add_option("--counts", exp_args.counts, "per-class sample counts override");
  exp->add_option("-o,--out", exp_args.outdir, "output directory");

  UatArgs uat_args;
  auto* uat = app.add_subcommand("uat", "Approximate a random discrete function");
  uat->add_option("--length", uat_args.length, "function support L");
  uat->add_option("--epsilon-total", uat_args.epsilon_total, "target total error");
  uat->add_option("--q", uat_args.q, "initial neural activity");
  uat->add_option("--b", uat_args.b, "discrimination threshold");
  uat->add_option("--max-iters", uat_args.max_iters, "trajectory cap");
  uat->add_option("--seed", uat_args.seed, "rng seed");
  uat->add_option("-o,--out", uat_args.outdir, "output directory");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return cmd_gen_data(gen_args);
    if (extract->parsed()) return cmd_extract(extract_args);
    if (exp->parsed()) {
      if (*seed_flag) exp_args.seed = seed_opt;
      if (*threads_flag) exp_args.threads = threads_opt;
      if (*trials_flag) exp_args.n_trials = trials_opt;
      return cmd_experiment(exp_args);
    }
    if (uat->parsed()) return cmd_uat(uat_args);
    return 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ProtocolError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const ApproximationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
