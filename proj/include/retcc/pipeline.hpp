#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "retcc/cc_models.hpp"
#include "retcc/scene_sim.hpp"

namespace retcc {

inline constexpr std::array<double, 4> kDefaultGammaSweep{0.0, 3.0, 6.0, 9.0};

/// Everything a pipeline invocation depends on. A fixed config (including
/// the seed) makes generate/run/evaluate produce byte-identical outputs.
struct RunConfig {
    std::string scene = "cartons";
    std::uint32_t seed = 0;
    std::filesystem::path out_dir = "out";
    double sigma1 = 1.057;
    double sigma2 = 17.964;
    FilterPath filter_path = FilterPath::Direct;
    double saturation_threshold = 255.0;
    std::array<double, 3> exposures = kDefaultExposures;
    bool dump_captures = false;
    std::vector<ModelSpec> models; // empty selects the default suite
};

/// Throws std::invalid_argument on violated invariants (sigma order,
/// saturation threshold outside [250,255], non-descending exposures).
void validate_config(const RunConfig& config);

/// The configured model list (or the default suite: log over the gamma
/// sweep, linear, N-R, gray-world) with the config's sigmas and filter
/// path applied to every entry.
std::vector<ModelSpec> effective_models(const RunConfig& config);

/// Renders the scene under all 17 conditions, simulates the triple-exposure
/// capture, merges, and writes reflectance.pfm, merged_XX.pfm and
/// manifest.txt (lines `index,left,right`) into the output directory.
void cmd_generate(const RunConfig& config);

/// Loads the generated dataset, runs every model on every condition and
/// writes samples.csv: one row per (model, condition, target) with the ROI
/// means expressed as h,s,v (display-mapped) and o_rg,o_yb,r,theta (raw X).
void cmd_run(const RunConfig& config);

/// Reads samples.csv, computes the Fisher report over the scene's pairs and
/// writes fisher.csv (with per-group max/min flags) and histograms.csv.
void cmd_evaluate(const RunConfig& config);

/// Full generate/run/evaluate chain with the model list replaced by log
/// encoders at each requested gamma.
void cmd_sweep_gamma(RunConfig config, std::span<const double> gammas);

/// Flat `key = value` file with one `[model]` section per model entry;
/// returns `base` with every present key overridden.
/// Throws ParseError on unknown keys or malformed values.
RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

} // namespace retcc
