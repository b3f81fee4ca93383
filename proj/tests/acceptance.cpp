// Acceptance suite: one checkable criterion per section, each printing a
// [PASS]/[FAIL] line. Run with no arguments for the full suite or with a
// criterion number (1..9) for a single one. Exit code is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "neurochaos/chaos.hpp"
#include "neurochaos/chaosfex.hpp"
#include "neurochaos/csv.hpp"
#include "neurochaos/errors.hpp"
#include "neurochaos/genome.hpp"
#include "neurochaos/harness.hpp"
#include "neurochaos/metrics.hpp"
#include "neurochaos/presets.hpp"
#include "neurochaos/rng.hpp"
#include "neurochaos/svm.hpp"
#include "synthetic_corpus.hpp"

namespace fs = std::filesystem;
using namespace neurochaos;

namespace {

struct Criterion {
  explicit Criterion(int n) : number(n) {}

  int number;
  bool passed = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    notes.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what);
    passed = passed && ok;
  }

  void note(const std::string& what) { notes.push_back("       " + what); }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) { return csv::format_double(v); }

fs::path workdir() {
  const fs::path dir = fs::temp_directory_path() / "neurochaos_acceptance";
  fs::create_directories(dir);
  return dir;
}

// ---------------------------------------------------------------------------

// Table 7 reproduction: OCCD holdout with the tuned hyperparameters.
Criterion criterion1() {
  Criterion c(1);
  const auto start = std::chrono::steady_clock::now();
  const auto configs = presets::preset_configs("table7", {});
  const auto fex = harness::run_config(configs[0]);
  const auto rbf = harness::run_config(configs[1]);
  const double elapsed = seconds_since(start);
  c.check(fex.mean_macro_f1 >= 0.80,
          "ChaosFEX+linear macro F1 " + fmt(fex.mean_macro_f1) + " >= 0.80");
  c.check(rbf.mean_macro_f1 >= 0.78 && rbf.mean_macro_f1 <= 0.88,
          "raw+RBF macro F1 " + fmt(rbf.mean_macro_f1) + " in [0.78, 0.88]");
  c.check(elapsed <= 300.0, "runtime " + fmt(elapsed) + "s <= 300s");
  return c;
}

// Table 4 noise suite.
Criterion criterion2() {
  Criterion c(2);
  const auto reports = harness::run_noise_suite(presets::kDefaultSeed);
  const double e1 = reports[0].mean_macro_f1;
  const double e2 = reports[1].mean_macro_f1;
  const double e3 = reports[2].mean_macro_f1;
  const double e4 = reports[3].mean_macro_f1;
  c.check(e1 >= 0.94, "Expt-1 ChaosFEX F1 " + fmt(e1) + " >= 0.94");
  c.check(e2 >= 0.95, "Expt-2 ChaosFEX F1 " + fmt(e2) + " >= 0.95");
  c.check(e3 <= 0.80, "Expt-3 RBF F1 " + fmt(e3) + " <= 0.80");
  c.check(e4 >= 0.70 && e4 <= 0.90, "Expt-4 RBF F1 " + fmt(e4) + " in [0.70, 0.90]");
  c.check(e2 - e1 <= 0.03, "ChaosFEX drop " + fmt(e2 - e1) + " <= 0.03");
  c.check(e4 - e3 >= 0.10, "RBF gap " + fmt(e4 - e3) + " >= 0.10");
  return c;
}

// Optimum hyperparameters on clean CCD reach near-perfect accuracy.
Criterion criterion3() {
  Criterion c(3);
  const auto configs = presets::preset_configs("expt2-optimum", {});
  const auto report = harness::run_config(configs[0]);
  const double accuracy = report.units[0].report.accuracy;
  c.check(accuracy >= 99.0, "CCD accuracy " + fmt(accuracy) + "% >= 99%");
  return c;
}

// Low-training-sample trends.
Criterion criterion4() {
  Criterion c(4);
  const auto start = std::chrono::steady_clock::now();
  const auto configs = presets::preset_configs("fig7-lowsample", {});
  const auto report = harness::run_config(configs[0]);
  const double elapsed = seconds_since(start);
  const auto& pc = report.per_count;
  double mean4 = 0.0, std4 = 0.0, mean724 = 0.0, std724 = 0.0;
  for (const auto& s : pc) {
    if (s.count == 4) {
      mean4 = s.mean_macro_f1;
      std4 = s.std_macro_f1;
    }
    if (s.count == 724) {
      mean724 = s.mean_macro_f1;
      std724 = s.std_macro_f1;
    }
  }
  c.note("mean F1 by count:");
  for (const auto& s : pc) {
    c.note("  count " + std::to_string(s.count) + ": mean " + fmt(s.mean_macro_f1) + ", std " +
           fmt(s.std_macro_f1));
  }
  c.check(mean724 - mean4 >= 0.05,
          "mean F1(724) - mean F1(4) = " + fmt(mean724 - mean4) + " >= 0.05");
  c.check(std724 < std4, "std F1(724) " + fmt(std724) + " < std F1(4) " + fmt(std4));
  c.check(elapsed <= 1200.0, "runtime " + fmt(elapsed) + "s <= 1200s");
  return c;
}

// UAT property suite.
Criterion criterion5() {
  Criterion c(5);
  Rng rng(515);
  std::size_t total_neurons = 0;
  std::size_t unfired_neurons = 0;
  std::size_t bound_violations = 0;
  std::size_t runs = 0;
  for (const double eps_total : {0.5, 0.1}) {
    for (const std::size_t L : {4ul, 16ul, 64ul}) {
      const chaos::GlsParams params(0.34, 0.499, eps_total / (2.0 * static_cast<double>(L)),
                                    1000000);
      for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> f(L);
        for (auto& v : f) v = rng.uniform();
        total_neurons += L;
        ++runs;
        try {
          const auto result = chaos::approximate_function(f, params);
          if (!(result.total_error < eps_total)) ++bound_violations;
        } catch (const ApproximationError& e) {
          unfired_neurons += e.unfired_indices.size();
        }
      }
    }
  }
  const double unfired_rate =
      static_cast<double>(unfired_neurons) / static_cast<double>(total_neurons);
  c.check(bound_violations == 0, "all " + std::to_string(runs) +
                                     " all-fired runs satisfy d(f,C) < eps_total (violations: " +
                                     std::to_string(bound_violations) + ")");
  c.check(unfired_rate < 0.01, "non-firing rate " + fmt(unfired_rate) + " < 1% (" +
                                   std::to_string(unfired_neurons) + "/" +
                                   std::to_string(total_neurons) + " neurons)");
  return c;
}

std::vector<double> naive_dft_magnitude(const std::vector<double>& signal, std::size_t length) {
  std::vector<double> out(length);
  for (std::size_t k = 0; k < length; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t n = 0; n < signal.size(); ++n) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) *
                           static_cast<double>(n) / static_cast<double>(length);
      acc += signal[n] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[k] = std::abs(acc);
  }
  return out;
}

// Genome pipeline substitutes: DFT oracle, Parseval, encoding, synthetic
// two-family corpus classified perfectly in five-fold crossvalidation.
Criterion criterion6() {
  Criterion c(6);

  // (a) oracle equivalence for every length 1..64
  Rng rng(66);
  double worst_rel = 0.0;
  for (std::size_t L = 1; L <= 64; ++L) {
    std::vector<double> signal(L);
    for (auto& v : signal) v = rng.uniform();
    const auto fast = genome::dft_magnitude(signal, L);
    const auto slow = naive_dft_magnitude(signal, L);
    double scale = 0.0;
    for (const double w : slow) scale = std::max(scale, std::abs(w));
    for (std::size_t k = 0; k < L; ++k) {
      worst_rel = std::max(worst_rel, std::abs(fast[k] - slow[k]) / (scale > 0 ? scale : 1.0));
    }
  }
  c.check(worst_rel <= 1e-9, "DFT vs naive oracle, L in 1..64: max rel err " + fmt(worst_rel));

  // (b) Parseval at L = 31029
  {
    const std::size_t L = 31029;
    std::vector<double> signal(L);
    double time_energy = 0.0;
    for (auto& v : signal) {
      v = rng.uniform();
      time_energy += v * v;
    }
    const auto mags = genome::dft_magnitude(signal, L);
    double freq_energy = 0.0;
    for (const double m : mags) freq_energy += m * m;
    const double rel =
        std::abs(freq_energy - static_cast<double>(L) * time_energy) /
        (static_cast<double>(L) * time_energy);
    c.check(rel <= 1e-9, "Parseval at L=31029: rel err " + fmt(rel));
  }

  // (c) encoding examples
  c.check(genome::encode("ACGT") == std::vector<double>{1.0, 0.25, 0.75, 0.5} &&
              genome::encode("CTGA") == std::vector<double>{0.25, 0.5, 0.75, 1.0},
          "nucleotide encoding C=0.25 T=0.50 G=0.75 A=1.0 exact");

  // (d) synthetic 20-record corpus, five-fold, F1 = 1.0
  const auto corpus = testing::make_spectral_corpus(2, 10, 606);
  const fs::path dir = workdir() / "c6";
  fs::create_directories(dir);
  {
    std::ofstream(dir / "corpus.fasta", std::ios::binary) << corpus.fasta;
    std::ofstream(dir / "labels.csv", std::ios::binary) << corpus.labels_csv;
  }
  harness::ExperimentConfig base;
  base.source.kind = harness::DataSource::Kind::kFasta;
  base.source.fasta = (dir / "corpus.fasta").string();
  base.source.labels_csv = (dir / "labels.csv").string();
  base.source.l_max = 1024;
  base.normalization = harness::Normalization::kNone;  // spectra are already in [0,1]
  base.protocol.kind = harness::Protocol::Kind::kStratifiedKfold;
  base.protocol.k = 5;
  base.seed = 99;

  // separability oracle first: the RBF baseline must already be perfect
  harness::ExperimentConfig rbf = base;
  rbf.name = "c6-rbf-baseline";
  rbf.classifier.kind = harness::ClassifierSpec::Kind::kRbf;
  rbf.classifier.gamma = svm::GammaSpec::scale();
  const auto rbf_report = harness::run_config(rbf);
  c.check(rbf_report.mean_macro_f1 == 1.0,
          "RBF baseline five-fold macro F1 " + fmt(rbf_report.mean_macro_f1) + " == 1.0");

  harness::ExperimentConfig fex = base;
  fex.name = "c6-chaosfex";
  fex.pipeline = harness::Pipeline::kChaosFex;
  fex.gls = presets::gls_genome();  // q=0.34, b=0.499, eps=0.183
  fex.classifier.kind = harness::ClassifierSpec::Kind::kLinear;
  const auto fex_report = harness::run_config(fex);
  bool all_folds_perfect = fex_report.mean_macro_f1 == 1.0;
  for (const auto& u : fex_report.units) all_folds_perfect &= u.report.macro_f1 == 1.0;
  c.check(all_folds_perfect,
          "ChaosFEX five-fold macro F1 " + fmt(fex_report.mean_macro_f1) + " == 1.0 in every fold");
  return c;
}

// Oracle equivalence of fire and transform.
Criterion criterion7() {
  Criterion c(7);
  Rng rng(777);
  std::size_t mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const double stimulus = rng.uniform();
    const chaos::GlsParams p(rng.uniform(), rng.uniform(0.05, 0.95), rng.uniform(0.001, 0.25),
                             1500);
    const auto traj = chaos::fire(stimulus, p);

    // independent brute-force scan
    double x = p.q;
    std::size_t oracle = SIZE_MAX;
    for (std::size_t t = 0; t <= p.max_iters; ++t) {
      if (std::abs(x - stimulus) < p.epsilon) {
        oracle = t;
        break;
      }
      x = x < p.b ? x / p.b : (1.0 - x) / (1.0 - p.b);
    }
    if (traj.fired) {
      if (oracle != traj.firing_time()) ++mismatches;
    } else {
      if (oracle != SIZE_MAX) ++mismatches;
    }
  }
  c.check(mismatches == 0,
          "fire vs brute-force oracle on 10000 pairs: " + std::to_string(mismatches) +
              " mismatches");

  Matrix data(80, 7);
  for (auto& v : data.data()) v = rng.uniform();
  const chaos::GlsParams p(0.22, 0.96, 0.018, 10000);
  const auto fast = chaosfex::transform(data, p, 2);
  Matrix expected(data.rows(), 4 * data.cols());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t k = 0; k < data.cols(); ++k) {
      const auto f = chaosfex::extract_features(data(i, k), p);
      expected(i, 4 * k + 0) = f.firing_time;
      expected(i, 4 * k + 1) = f.firing_rate;
      expected(i, 4 * k + 2) = f.energy;
      expected(i, 4 * k + 3) = f.entropy;
    }
  }
  c.check(fast.features == expected, "transform equals the scalar double loop bitwise");
  return c;
}

// Metrics spot checks.
Criterion criterion8() {
  Criterion c(8);
  const auto hand = metrics::report({0, 0, 1, 1}, {0, 1, 1, 1}, {0, 1});
  c.check(std::abs(hand.macro_f1 - 22.0 / 30.0) <= 1e-12,
          "hand-computed macro F1 " + fmt(hand.macro_f1) + " == 0.7333... (1e-12)");

  const auto perfect = metrics::report({0, 1, 2}, {0, 1, 2}, {0, 1, 2});
  c.check(perfect.macro_f1 == 1.0 && perfect.accuracy == 100.0,
          "all-correct report: macro F1 1, accuracy 100");

  const auto absent = metrics::report({0, 0, 1, 4}, {0, 0, 1, 1}, {0, 1, 4});
  c.check(absent.precision[2] == 0.0 && absent.recall[2] == 0.0 && absent.f1[2] == 0.0,
          "class absent from predictions scores 0/0/0");
  return c;
}

// Determinism: every preset writes byte-identical result CSVs when rerun.
Criterion criterion9() {
  Criterion c(9);
  const fs::path root = workdir() / "c9";
  fs::remove_all(root);
  fs::create_directories(root);

  // synthetic corpora stand in for the unavailable genome data
  const auto binary_corpus = testing::make_spectral_corpus(2, 10, 909);
  const auto multi_corpus = testing::make_spectral_corpus(3, 10, 910);
  std::ofstream(root / "binary.fasta", std::ios::binary) << binary_corpus.fasta;
  std::ofstream(root / "binary_labels.csv", std::ios::binary) << binary_corpus.labels_csv;
  std::ofstream(root / "multi.fasta", std::ios::binary) << multi_corpus.fasta;
  std::ofstream(root / "multi_labels.csv", std::ios::binary) << multi_corpus.labels_csv;

  auto read_bytes = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  auto compare_dirs = [&](const fs::path& a, const fs::path& b, Criterion& crit,
                          const std::string& label) {
    std::vector<fs::path> csvs;
    for (const auto& entry : fs::recursive_directory_iterator(a)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") {
        csvs.push_back(fs::relative(entry.path(), a));
      }
    }
    bool ok = !csvs.empty();
    for (const auto& rel : csvs) {
      ok = ok && fs::exists(b / rel) && read_bytes(a / rel) == read_bytes(b / rel);
    }
    crit.check(ok, label + ": " + std::to_string(csvs.size()) + " result CSVs byte-identical");
  };

  for (const std::string& name : presets::preset_names()) {
    presets::Overrides overrides;
    overrides.seed = presets::kDefaultSeed;
    if (name == "fivefold-binary" || name == "sars2-vs-sars1") {
      overrides.input = (root / "binary.fasta").string();
      overrides.labels = (root / "binary_labels.csv").string();
    } else if (name == "fivefold-multiclass") {
      overrides.input = (root / "multi.fasta").string();
      overrides.labels = (root / "multi_labels.csv").string();
    } else if (name == "fig10-lowsample") {
      overrides.input = (root / "binary.fasta").string();
      overrides.labels = (root / "binary_labels.csv").string();
      overrides.counts = std::vector<std::size_t>{1, 2};
      overrides.n_trials = 3;
    }
    const fs::path run_a = root / (name + "-a");
    const fs::path run_b = root / (name + "-b");
    presets::run_preset(name, overrides, run_a);
    presets::run_preset(name, overrides, run_b);
    compare_dirs(run_a, run_b, c, "preset " + name);
  }

  // gen-data determinism through the CLI binary when available
#ifdef NEUROCHAOS_CLI_PATH
  for (const std::string preset : {"occd", "ccd"}) {
    const std::string cli = NEUROCHAOS_CLI_PATH;
    const fs::path gen_a = root / ("gen-" + preset + "-a");
    const fs::path gen_b = root / ("gen-" + preset + "-b");
    bool ran = true;
    for (const auto& dir : {gen_a, gen_b}) {
      const std::string cmd = "\"" + cli + "\" gen-data --preset " + preset +
                              " --seed 7 -o \"" + dir.string() + "\" > /dev/null";
      ran = ran && std::system(cmd.c_str()) == 0;
    }
    const bool same = ran && read_bytes(gen_a / (preset + ".csv")) ==
                                read_bytes(gen_b / (preset + ".csv"));
    c.check(same, "CLI gen-data --preset " + preset + " rerun byte-identical");
  }
#endif
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  std::vector<Criterion (*)()> criteria{criterion1, criterion2, criterion3,
                                        criterion4, criterion5, criterion6,
                                        criterion7, criterion8, criterion9};
  int failures = 0;
  for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) {
    if (only != 0 && only != i) continue;
    Criterion result = criteria[i - 1]();
    std::cout << (result.passed ? "[PASS]" : "[FAIL]") << " criterion " << i << '\n';
    for (const auto& note : result.notes) std::cout << note << '\n';
    if (!result.passed) ++failures;
  }
  return failures;
}
