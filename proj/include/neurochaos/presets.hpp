#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "neurochaos/harness.hpp"

namespace neurochaos::presets {

inline constexpr const char* kToolName = "neurochaos";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 7;

// Frozen hyperparameter sets used by the shipped experiment presets.
inline chaos::GlsParams gls_occd_optimum() { return {0.22, 0.96, 0.018}; }
inline chaos::GlsParams gls_noise_robust() { return {0.34, 0.499, 0.18}; }
inline chaos::GlsParams gls_genome() { return {0.34, 0.499, 0.183}; }

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::vector<std::size_t>> counts;
  std::optional<std::size_t> n_trials;
  std::optional<std::string> input;   // FASTA path for genome presets
  std::optional<std::string> labels;  // id,label CSV for genome presets
};

std::vector<std::string> preset_names();

// Experiment configs of a named preset (one or more arms).
std::vector<harness::ExperimentConfig> preset_configs(const std::string& name,
                                                      const Overrides& overrides);

// Runs every arm of the preset, writing per-arm files under
// outdir/<arm-name>/ (report.json, units.csv, counts.csv when applicable,
// config.json) plus a top-level summary.json. Returns the summary.
nlohmann::json run_preset(const std::string& name, const Overrides& overrides,
                          const std::filesystem::path& outdir);

// Runs one parsed config (or an expanded grid) the same way the preset
// runner does; shared by the CLI config path.
nlohmann::json run_config_to_dir(const harness::ExperimentConfig& config,
                                 const std::filesystem::path& outdir);

// Grid configs: {"grid": {...}} documents axes over epsilon/q/b/C/gamma.
struct GridAxis {
  std::string param;  // "epsilon" | "q" | "b" | "C" | "gamma"
  std::vector<nlohmann::json> values;
};

struct GridSpec {
  harness::ExperimentConfig base;
  std::vector<GridAxis> axes;
  std::size_t k = 3;
};

GridSpec grid_from_json(const nlohmann::json& j);
std::vector<harness::ExperimentConfig> expand_grid(const GridSpec& spec);
nlohmann::json run_grid_to_dir(const GridSpec& spec, const std::filesystem::path& outdir);

}  // namespace neurochaos::presets
