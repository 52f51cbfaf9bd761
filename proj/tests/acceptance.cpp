// Acceptance harness: ten end-to-end checks, one summary line each.
// Exits nonzero if any check fails its tolerance or time budget.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "retcc/cc_models.hpp"
#include "retcc/colorspace.hpp"
#include "retcc/encoding.hpp"
#include "retcc/error.hpp"
#include "retcc/image.hpp"
#include "retcc/metrics.hpp"
#include "retcc/pipeline.hpp"
#include "retcc/scene_sim.hpp"
#include "retcc/spatial_filter.hpp"

using namespace retcc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string detailf(const char* format, ...) {
    char buf[200];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

double unit(std::mt19937& rng) {
    return rng() / 4294967296.0;
}

Image random_image(int w, int h, std::uint32_t seed, double lo, double hi) {
    Image img(w, h);
    std::mt19937 rng(seed);
    for (double& v : img.samples()) {
        v = lo + (hi - lo) * (rng() / 4294967296.0);
    }
    return img;
}

double max_abs_difference(const Image& a, const Image& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.samples().size(); ++i) {
        worst = std::max(worst, std::abs(a.samples()[i] - b.samples()[i]));
    }
    return worst;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("acceptance: cannot read " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch_dir(const char* name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    return dir;
}

// ---------------------------------------------------------------------------

// 1. All three encoders pin their conversion bounds to the display range.
Outcome criterion_endpoints() {
    std::mt19937 rng(1001);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double i_min = 1000.0 * unit(rng);
        const double range = 1.0 + 4999.0 * unit(rng);
        const IntensityBounds bounds{i_min, i_min + range};
        const double gamma = 10.0 * unit(rng);
        const double i_h = range * (0.001 + 0.999 * unit(rng));

        const LogParams log = make_log_params(bounds, gamma);
        worst = std::max(worst, std::abs(log_transfer(bounds.i_min, bounds, log)));
        worst = std::max(worst, std::abs(log_transfer(bounds.i_max, bounds, log) - 255.0));

        const NrParams nr = make_nr_params(bounds, i_h);
        worst = std::max(worst, std::abs(nr_transfer(bounds.i_min, bounds, nr)));
        worst = std::max(worst, std::abs(nr_transfer(bounds.i_max, bounds, nr) - 255.0));

        worst = std::max(worst, std::abs(linear_transfer(bounds.i_min, bounds)));
        worst = std::max(worst, std::abs(linear_transfer(bounds.i_max, bounds) - 255.0));
    }
    return {worst <= 1e-6, detailf("max endpoint deviation %.2e (tol 1e-6)", worst)};
}

// 2. The saturating encoder crosses half of its ceiling at i_min + i_h.
Outcome criterion_half_saturation() {
    std::mt19937 rng(1002);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double i_min = 2000.0 * unit(rng);
        const double range = 1.0 + 3999.0 * unit(rng);
        const IntensityBounds bounds{i_min, i_min + range};
        const double i_h = range * (0.001 + 0.999 * unit(rng));
        const NrParams nr = make_nr_params(bounds, i_h);
        worst = std::max(worst,
                         std::abs(nr_transfer(i_min + i_h, bounds, nr) - nr.v_m / 2.0));
    }
    return {worst <= 1e-9, detailf("max half-saturation deviation %.2e (tol 1e-9)", worst)};
}

// 3. The filter stage carries no DC response.
Outcome criterion_dog_constant() {
    double worst = 0.0;
    for (FilterPath path : {FilterPath::Direct, FilterPath::Hdc}) {
        const RetinexOutput out = dog(Image(160, 120, 201.25), 1.057, 17.964, path);
        for (double v : out.samples()) {
            worst = std::max(worst, std::abs(v));
        }
    }
    return {worst <= 1e-9, detailf("max response to a constant %.2e (tol 1e-9)", worst)};
}

// 4. With the idealized log encoder a per-channel illuminant gain cancels.
Outcome criterion_gain_invariance() {
    std::mt19937 rng(1004);
    ModelSpec spec;
    spec.kind = ModelKind::CsRetinexPureLog;
    double worst = 0.0;
    for (int scene = 0; scene < 20; ++scene) {
        const LinearImage base(random_image(160, 120, 1100 + scene, 1.0, 2000.0));
        LinearImage tinted(base.width(), base.height());
        for (int c = 0; c < kChannels; ++c) {
            const double gain = 0.25 + 3.75 * unit(rng);
            for (std::size_t i = 0; i < base.plane(c).size(); ++i) {
                tinted.plane(c)[i] = gain * base.plane(c)[i];
            }
        }
        worst = std::max(worst, max_abs_difference(run_cs_retinex(base, spec),
                                                   run_cs_retinex(tinted, spec)));
    }
    return {worst <= 1e-6, detailf("max response change %.2e (tol 1e-6)", worst)};
}

// 5. The cascade approximation of the surround filter stays within 2 levels.
Outcome criterion_fast_filter() {
    const GaussianSpec spec = GaussianSpec::truncated(17.964);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Image img = random_image(160, 120, 1200 + i, 0.0, 255.0);
        worst = std::max(worst,
                         max_abs_difference(hdc_gaussian(img, 17.964),
                                            gaussian_filter(img, spec)));
    }
    return {worst <= 2.0, detailf("max deviation %.3f levels (tol 2.0)", worst)};
}

// 6. Color conversion and the separability measure match independent oracles.
Outcome criterion_oracles() {
    const auto reference_hsv = [](double r, double g, double b) {
        const double v = std::max({r, g, b});
        const double chroma = v - std::min({r, g, b});
        HsvColor out;
        out.v = v;
        if (chroma == 0.0) return out;
        double sector;
        if (v == r) {
            sector = (g - b) / chroma;
            if (sector < 0.0) sector += 6.0;
        } else if (v == g) {
            sector = (b - r) / chroma + 2.0;
        } else {
            sector = (r - g) / chroma + 4.0;
        }
        out.h = 60.0 * sector;
        out.s = chroma / v * 255.0;
        return out;
    };

    double worst = 0.0;
    const double levels[2] = {0.0, 255.0};
    for (double r : levels) {
        for (double g : levels) {
            for (double b : levels) {
                const HsvColor got = rgb_to_hsv(r, g, b);
                const HsvColor want = reference_hsv(r, g, b);
                if (got.h != want.h || got.s != want.s || got.v != want.v) {
                    return {false, "corner color mismatch"};
                }
            }
        }
    }
    std::mt19937 rng(1006);
    for (int i = 0; i < 1000; ++i) {
        const double r = 255.0 * unit(rng);
        const double g = 255.0 * unit(rng);
        const double b = 255.0 * unit(rng);
        const HsvColor got = rgb_to_hsv(r, g, b);
        const HsvColor want = reference_hsv(r, g, b);
        worst = std::max({worst, std::abs(got.h - want.h), std::abs(got.s - want.s),
                          std::abs(got.v - want.v)});
    }
    if (worst > 1e-9) {
        return {false, detailf("random color deviation %.2e (tol 1e-9)", worst)};
    }

    const SampleSet a{"a", Attribute::Brightness, {1.0, 2.0, 3.0}};
    const SampleSet b{"b", Attribute::Brightness, {5.0, 6.0, 7.0}};
    const SampleSet c{"c", Attribute::Brightness, {0.0, 2.0}};
    const SampleSet d{"d", Attribute::Brightness, {4.0, 6.0}};
    if (fisher_criterion(a, b).d != 12.0) return {false, "D({1,2,3},{5,6,7}) != 12"};
    if (fisher_criterion(c, d).d != 8.0) return {false, "D({0,2},{4,6}) != 8"};
    return {true, detailf("corners exact, randoms within %.2e, D = 12 and 8 exact", worst)};
}

RunConfig carton_config(const fs::path& dir) {
    RunConfig config;
    config.scene = "cartons";
    config.seed = 2026;
    config.out_dir = dir;
    config.models = {
        {ModelKind::CsRetinexLog, 6.0},
        {ModelKind::CsRetinexLinear},
        {ModelKind::CsRetinexNr},
        {ModelKind::GrayWorld},
    };
    return config;
}

std::map<std::tuple<std::string, std::string, std::string>, double>
load_fisher(const fs::path& path) {
    std::map<std::tuple<std::string, std::string, std::string>, double> table;
    std::ifstream in(path);
    if (!in) throw IoError("acceptance: cannot read " + path.string());
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header || line.empty()) {
            header = false;
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t pos = line.find(','); pos != std::string::npos;
             pos = line.find(',', start)) {
            fields.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
        fields.push_back(line.substr(start));
        if (fields.size() < 4) continue;
        table[{fields[1], fields[2], fields[0]}] = std::stod(fields[3]);
    }
    return table;
}

// 7. On the carton suite the compressive encoders dominate both ablations.
Outcome criterion_discrimination() {
    const fs::path dir = scratch_dir("retcc_acceptance_cartons");
    const RunConfig config = carton_config(dir);
    cmd_generate(config);
    cmd_run(config);
    cmd_evaluate(config);

    const auto table = load_fisher(dir / "fisher.csv");
    const std::vector<std::string> pairs = {"red & yellow", "yellow & green",
                                            "green & blue", "blue & red"};
    int min_wins = 4;
    for (const std::string& attribute : {std::string("hue"), std::string("theta")}) {
        for (const std::string& challenger : {std::string("log_g6"), std::string("nr")}) {
            for (const std::string& baseline : {std::string("linear"), std::string("gw")}) {
                int wins = 0;
                for (const std::string& pair : pairs) {
                    const auto lhs = table.find({attribute, pair, challenger});
                    const auto rhs = table.find({attribute, pair, baseline});
                    if (lhs == table.end() || rhs == table.end()) {
                        return {false, "missing fisher.csv row for " + attribute + " " + pair};
                    }
                    if (lhs->second > rhs->second) ++wins;
                }
                min_wins = std::min(min_wins, wins);
            }
        }
    }
    return {min_wins >= 3,
            detailf("log(g=6) and n-r beat linear and gw on >= %d/4 pairs (need 3)", min_wins)};
}

// 8. Gray world drives every unclamped channel mean to the common target.
Outcome criterion_gray_world() {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        // Values chosen so no pixel clamps; the means must then be exact.
        const LinearImage img(random_image(60, 40, 1300 + i, 100.0, 150.0));
        const RetinexOutput out = run_gray_world(img);
        for (int c = 0; c < kChannels; ++c) {
            worst = std::max(worst, std::abs(mean(out.plane(c)) - 128.0));
        }
    }
    return {worst <= 1e-9, detailf("max mean deviation from 128: %.2e (tol 1e-9)", worst)};
}

// 9. The exposure merge inverts the capture quantization within its bound.
Outcome criterion_merge_round_trip() {
    LinearImage img(250, 134); // 100500 samples across the three planes
    std::mt19937 rng(1009);
    for (double& v : img.samples()) {
        v = 4071.0 * unit(rng); // below the short-exposure ceiling of 4072
    }
    const LinearImage merged = merge_hdr(capture_stack(img));
    double worst_ratio = 0.0;
    for (std::size_t i = 0; i < img.samples().size(); ++i) {
        const double truth = img.samples()[i];
        const double t = truth < 254.5 ? 1.0 : (truth < 1018.0 ? 0.25 : 0.0625);
        const double bound = 0.5 / t;
        worst_ratio = std::max(worst_ratio,
                               std::abs(merged.samples()[i] - truth) / bound);
    }
    return {worst_ratio <= 1.0 + 1e-12,
            detailf("worst error %.3f of the 0.5/t bound", worst_ratio)};
}

// 10. The full chain is reproducible byte for byte.
Outcome criterion_determinism() {
    const fs::path dir_a = scratch_dir("retcc_acceptance_det_a");
    const fs::path dir_b = scratch_dir("retcc_acceptance_det_b");
    for (const fs::path& dir : {dir_a, dir_b}) {
        RunConfig config = carton_config(dir);
        cmd_generate(config);
        cmd_run(config);
        cmd_evaluate(config);
    }
    int identical = 0;
    for (const char* name : {"samples.csv", "fisher.csv", "histograms.csv"}) {
        if (slurp(dir_a / name) == slurp(dir_b / name)) ++identical;
    }
    return {identical == 3, detailf("%d of 3 csv files byte-identical", identical)};
}

// ---------------------------------------------------------------------------

bool run_criterion(int index, const char* title, double time_limit_s, Outcome (*fn)()) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        outcome = fn();
    } catch (const std::exception& e) {
        outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit_s > 0.0 && seconds > time_limit_s) {
        outcome.pass = false;
        outcome.detail += detailf("; exceeded %.0f s budget", time_limit_s);
    }
    std::printf("[%2d] %s  %-46s  %s (%.2f s)\n", index, outcome.pass ? "PASS" : "FAIL",
                title, outcome.detail.c_str(), seconds);
    return outcome.pass;
}

} // namespace

int main() {
    int failed = 0;
    failed += !run_criterion(1, "encoder endpoints map to 0 and 255", 1.0,
                             criterion_endpoints);
    failed += !run_criterion(2, "naka-rushton half-saturation identity", 1.0,
                             criterion_half_saturation);
    failed += !run_criterion(3, "dog annihilates constant images", 1.0,
                             criterion_dog_constant);
    failed += !run_criterion(4, "pure-log retinex cancels channel gains", 10.0,
                             criterion_gain_invariance);
    failed += !run_criterion(5, "cascade filter tracks the direct filter", 10.0,
                             criterion_fast_filter);
    failed += !run_criterion(6, "hsv and fisher oracles", 0.0, criterion_oracles);
    failed += !run_criterion(7, "compressive encoders win the carton suite", 60.0,
                             criterion_discrimination);
    failed += !run_criterion(8, "gray world normalizes channel means", 0.0,
                             criterion_gray_world);
    failed += !run_criterion(9, "hdr merge round-trip", 0.0, criterion_merge_round_trip);
    failed += !run_criterion(10, "end-to-end determinism", 0.0, criterion_determinism);

    if (failed == 0) {
        std::printf("all 10 acceptance criteria passed\n");
    } else {
        std::printf("%d of 10 acceptance criteria FAILED\n", failed);
    }
    return failed == 0 ? 0 : 1;
}
