#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "retcc/pipeline.hpp"

namespace {

struct CliState {
    std::string config_file;
    std::string scene = "cartons";
    std::uint32_t seed = 0;
    std::string out = "out";
    double sigma1 = 1.057;
    double sigma2 = 17.964;
    std::string filter = "direct";
    double saturation = 255.0;
    bool dump_captures = false;
    std::vector<std::string> model_names;
    std::vector<double> gammas;
};

void add_common_options(CLI::App* sub, CliState& state) {
    sub->add_option("--config", state.config_file,
                    "Config file overriding the defaults (flags still win)");
    sub->add_option("--scene", state.scene, "Scene to simulate")
        ->check(CLI::IsMember({"cartons", "red-patches", "green-patches"}));
    sub->add_option("--seed", state.seed, "Background texture seed");
    sub->add_option("--out", state.out, "Output directory");
    sub->add_option("--sigma1", state.sigma1, "Center Gaussian sigma in pixels");
    sub->add_option("--sigma2", state.sigma2, "Surround Gaussian sigma in pixels");
    sub->add_option("--filter", state.filter, "Gaussian implementation")
        ->check(CLI::IsMember({"direct", "hdc"}));
    sub->add_option("--saturation", state.saturation,
                    "HDR merge saturation threshold (250-255)")
        ->check(CLI::Range(250.0, 255.0));
}

retcc::RunConfig build_config(const CLI::App* sub, const CliState& state) {
    retcc::RunConfig config;
    if (!state.config_file.empty()) {
        config = retcc::load_config_file(state.config_file, config);
    }
    if (sub->count("--scene")) config.scene = state.scene;
    if (sub->count("--seed")) config.seed = state.seed;
    if (sub->count("--out")) config.out_dir = state.out;
    if (sub->count("--sigma1")) config.sigma1 = state.sigma1;
    if (sub->count("--sigma2")) config.sigma2 = state.sigma2;
    if (sub->count("--filter")) {
        config.filter_path =
            state.filter == "hdc" ? retcc::FilterPath::Hdc : retcc::FilterPath::Direct;
    }
    if (sub->count("--saturation")) config.saturation_threshold = state.saturation;
    const CLI::Option* dump = sub->get_option_no_throw("--dump-captures");
    if (dump != nullptr && dump->count() > 0) config.dump_captures = state.dump_captures;

    if (!state.model_names.empty()) {
        config.models.clear();
        const std::vector<double> sweep =
            state.gammas.empty()
                ? std::vector<double>(retcc::kDefaultGammaSweep.begin(),
                                      retcc::kDefaultGammaSweep.end())
                : state.gammas;
        for (const std::string& name : state.model_names) {
            if (name == "log") {
                for (double gamma : sweep) {
                    config.models.push_back({retcc::ModelKind::CsRetinexLog, gamma});
                }
            } else if (name == "linear") {
                config.models.push_back({retcc::ModelKind::CsRetinexLinear});
            } else if (name == "nr") {
                config.models.push_back({retcc::ModelKind::CsRetinexNr});
            } else {
                config.models.push_back({retcc::ModelKind::GrayWorld});
            }
        }
    }
    return config;
}

int run_stage(const char* stage, const CLI::App* sub, const CliState& state,
              void (*command)(const retcc::RunConfig&)) {
    try {
        command(build_config(sub, state));
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "retcc %s failed: %s\n", stage, e.what());
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Retina-inspired color constancy: synthetic darkroom scenes, "
        "center/surround retinex models and Fisher-criterion evaluation"};
    app.require_subcommand(1);
    app.footer(
        "Config file keys: scene, seed, out, sigma1, sigma2, filter (direct|hdc),\n"
        "saturation_threshold, exposures (three descending values), dump_captures,\n"
        "plus one [model] section per model with kind (log|linear|nr|gw) and gamma.");

    CliState state;

    CLI::App* generate =
        app.add_subcommand("generate", "Render and merge the 17-condition dataset");
    add_common_options(generate, state);
    generate->add_flag("--dump-captures", state.dump_captures,
                       "Also write the raw 8-bit exposure captures as PPM");

    CLI::App* run = app.add_subcommand("run", "Run the models over a generated dataset");
    add_common_options(run, state);
    run->add_option("--model", state.model_names,
                    "Model selection; default is the full suite")
        ->check(CLI::IsMember({"log", "linear", "nr", "gw"}));
    run->add_option("--gamma", state.gammas, "Gamma values for log models [0 3 6 9]");

    CLI::App* evaluate =
        app.add_subcommand("evaluate", "Fisher report + histograms from samples.csv");
    add_common_options(evaluate, state);

    CLI::App* sweep =
        app.add_subcommand("sweep-gamma", "Generate, run and evaluate log models only");
    add_common_options(sweep, state);
    sweep->add_option("--gamma", state.gammas, "Gamma values to sweep [0 3 6 9]");

    CLI11_PARSE(app, argc, argv);

    if (generate->parsed()) return run_stage("generate", generate, state, retcc::cmd_generate);
    if (run->parsed()) return run_stage("run", run, state, retcc::cmd_run);
    if (evaluate->parsed()) return run_stage("evaluate", evaluate, state, retcc::cmd_evaluate);
    try {
        cmd_sweep_gamma(build_config(sweep, state), state.gammas);
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "retcc sweep-gamma failed: %s\n", e.what());
        return 1;
    }
}
