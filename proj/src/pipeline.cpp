#include "retcc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "retcc/colorspace.hpp"
#include "retcc/error.hpp"
#include "retcc/image_io.hpp"
#include "retcc/metrics.hpp"

namespace retcc {
namespace {

constexpr double kHistogramBinWidth = 5.0;

std::string trim(std::string_view text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    const auto end = text.find_last_not_of(" \t\r");
    return std::string(text.substr(begin, end - begin + 1));
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(const std::string& text, const std::string& where) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        throw ParseError(where + ": expected a number, got '" + text + "'");
    }
}

long parse_long(const std::string& text, const std::string& where) {
    try {
        std::size_t used = 0;
        const long value = std::stol(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        throw ParseError(where + ": expected an integer, got '" + text + "'");
    }
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

std::string merged_name(long index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "merged_%02ld.pfm", index);
    return buf;
}

/// Runs fn(0..n-1) on separate threads; rethrows the first failure.
template <typename Fn>
void parallel_for_index(int n, Fn&& fn) {
    std::vector<std::future<void>> futures;
    futures.reserve(n);
    for (int i = 0; i < n; ++i) {
        futures.push_back(std::async(std::launch::async, [&fn, i] { fn(i); }));
    }
    for (auto& f : futures) f.get();
}

struct ManifestEntry {
    long index = 0;
    std::string left;
    std::string right;
};

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& out_dir) {
    const std::filesystem::path path = out_dir / "manifest.txt";
    std::ifstream in(path);
    if (!in) {
        throw Error("missing dataset (run generate first): " + path.string());
    }
    std::vector<ManifestEntry> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty()) continue;
        const std::vector<std::string> fields = split(text, ',');
        const std::string where = path.string() + " line " + std::to_string(line_no);
        if (fields.size() != 3) {
            throw ParseError(where + ": expected index,left,right");
        }
        entries.push_back({parse_long(fields[0], where), fields[1], fields[2]});
    }
    if (entries.empty()) throw ParseError(path.string() + ": manifest is empty");
    return entries;
}

ModelKind parse_model_kind(const std::string& text, const std::string& where) {
    if (text == "log") return ModelKind::CsRetinexLog;
    if (text == "linear") return ModelKind::CsRetinexLinear;
    if (text == "nr") return ModelKind::CsRetinexNr;
    if (text == "gw") return ModelKind::GrayWorld;
    throw ParseError(where + ": unknown model kind '" + text +
                     "' (expected log, linear, nr or gw)");
}

FilterPath parse_filter(const std::string& text, const std::string& where) {
    if (text == "direct") return FilterPath::Direct;
    if (text == "hdc") return FilterPath::Hdc;
    throw ParseError(where + ": unknown filter '" + text + "' (expected direct or hdc)");
}

} // namespace

void validate_config(const RunConfig& config) {
    if (!(config.sigma1 < config.sigma2)) {
        throw std::invalid_argument("config: requires sigma1 < sigma2");
    }
    if (!(config.saturation_threshold >= 250.0 && config.saturation_threshold <= 255.0)) {
        throw std::invalid_argument("config: saturation threshold must be in [250,255]");
    }
    if (!(config.exposures[0] > config.exposures[1] &&
          config.exposures[1] > config.exposures[2] && config.exposures[2] > 0.0)) {
        throw std::invalid_argument("config: exposures must be strictly descending and positive");
    }
    for (const ModelSpec& spec : config.models) {
        if (!std::isfinite(spec.gamma)) {
            throw std::invalid_argument("config: model gamma must be finite");
        }
    }
}

std::vector<ModelSpec> effective_models(const RunConfig& config) {
    std::vector<ModelSpec> models = config.models;
    if (models.empty()) {
        for (double gamma : kDefaultGammaSweep) {
            models.push_back({ModelKind::CsRetinexLog, gamma});
        }
        models.push_back({ModelKind::CsRetinexLinear});
        models.push_back({ModelKind::CsRetinexNr});
        models.push_back({ModelKind::GrayWorld});
    }
    for (ModelSpec& spec : models) {
        spec.sigma1 = config.sigma1;
        spec.sigma2 = config.sigma2;
        spec.filter_path = config.filter_path;
    }
    return models;
}

void cmd_generate(const RunConfig& config) {
    validate_config(config);
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + config.out_dir.string() + ": " +
                      ec.message());
    }

    const ReflectanceScene scene = make_scene(config.scene, config.seed);
    write_pfm(LinearImage(scene.rho), config.out_dir / "reflectance.pfm");

    const std::vector<IlluminationCondition> conditions = enumerate_conditions();
    const int n = static_cast<int>(conditions.size());
    std::vector<ExposureStack> stacks(n);
    std::vector<LinearImage> merged(n);
    parallel_for_index(n, [&](int i) {
        const LinearImage radiance = render(scene, conditions[i]);
        stacks[i] = capture_stack(radiance, config.exposures);
        merged[i] = merge_hdr(stacks[i], config.saturation_threshold);
    });

    for (int i = 0; i < n; ++i) {
        write_pfm(merged[i], config.out_dir / merged_name(i));
        if (config.dump_captures) {
            const char* role[] = {"long", "mid", "short"};
            for (int k = 0; k < 3; ++k) {
                char buf[40];
                std::snprintf(buf, sizeof buf, "capture_%02d_%s.ppm", i, role[k]);
                write_ppm(stacks[i].captures[k], config.out_dir / buf);
            }
        }
    }

    const std::filesystem::path manifest_path = config.out_dir / "manifest.txt";
    std::ofstream manifest = open_output(manifest_path);
    for (int i = 0; i < n; ++i) {
        manifest << i << ',' << led_name(conditions[i].left) << ','
                 << led_name(conditions[i].right) << '\n';
    }
    finish_output(manifest, manifest_path);
}

void cmd_run(const RunConfig& config) {
    validate_config(config);
    const ReflectanceScene scene = make_scene(config.scene, config.seed);
    const std::vector<ManifestEntry> manifest = read_manifest(config.out_dir);
    const std::vector<ModelSpec> models = effective_models(config);

    const int n = static_cast<int>(manifest.size());
    std::vector<LinearImage> images;
    images.reserve(n);
    for (const ManifestEntry& entry : manifest) {
        images.push_back(read_pfm(config.out_dir / merged_name(entry.index)));
    }

    // rows[condition][model * targets + target] -> h,s,v,o_rg,o_yb,r,theta
    const std::size_t per_condition = models.size() * scene.targets.size();
    std::vector<std::vector<std::array<double, 7>>> rows(
        n, std::vector<std::array<double, 7>>(per_condition));
    parallel_for_index(n, [&](int i) {
        for (std::size_t m = 0; m < models.size(); ++m) {
            const RetinexOutput x = run_model(images[i], models[m]);
            const EncodedImage display = to_display(x, models[m].kind);
            for (std::size_t t = 0; t < scene.targets.size(); ++t) {
                const Roi& roi = scene.targets[t].roi;
                const std::array<double, 3> raw = roi_mean(x, roi);
                const std::array<double, 3> shown = roi_mean(display, roi);
                const DoColor dc = retinex_to_do(raw[0], raw[1], raw[2]);
                const HsvColor hc = rgb_to_hsv(shown[0], shown[1], shown[2]);
                rows[i][m * scene.targets.size() + t] = {hc.h,  hc.s,  hc.v, dc.o_rg,
                                                         dc.o_yb, dc.r, dc.theta};
            }
        }
    });

    const std::filesystem::path samples_path = config.out_dir / "samples.csv";
    std::ofstream out = open_output(samples_path);
    out << "model,condition,target,h,s,v,o_rg,o_yb,r,theta\n";
    for (std::size_t m = 0; m < models.size(); ++m) {
        const std::string name = model_name(models[m]);
        for (int i = 0; i < n; ++i) {
            for (std::size_t t = 0; t < scene.targets.size(); ++t) {
                out << name << ',' << manifest[i].index << ',' << scene.targets[t].name;
                for (double value : rows[i][m * scene.targets.size() + t]) {
                    out << ',' << format_sig(value);
                }
                out << '\n';
            }
        }
    }
    finish_output(out, samples_path);
}

void cmd_evaluate(const RunConfig& config) {
    validate_config(config);
    const ReflectanceScene scene = make_scene(config.scene, config.seed);

    const std::filesystem::path samples_path = config.out_dir / "samples.csv";
    std::ifstream in(samples_path);
    if (!in) {
        throw Error("missing samples (run the run command first): " + samples_path.string());
    }

    struct Columns {
        std::vector<double> h, s, v, r, theta;
    };
    std::vector<std::string> model_order;
    std::map<std::pair<std::string, std::string>, Columns> columns;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty()) continue;
        if (line_no == 1) {
            if (text != "model,condition,target,h,s,v,o_rg,o_yb,r,theta") {
                throw ParseError(samples_path.string() + ": unexpected header");
            }
            continue;
        }
        const std::vector<std::string> fields = split(text, ',');
        const std::string where = samples_path.string() + " line " + std::to_string(line_no);
        if (fields.size() != 10) throw ParseError(where + ": expected 10 fields");
        parse_long(fields[1], where); // condition index, validated but unused here
        if (std::ranges::find(model_order, fields[0]) == model_order.end()) {
            model_order.push_back(fields[0]);
        }
        Columns& col = columns[{fields[0], fields[2]}];
        col.h.push_back(parse_double(fields[3], where));
        col.s.push_back(parse_double(fields[4], where));
        col.v.push_back(parse_double(fields[5], where));
        col.r.push_back(parse_double(fields[8], where));
        col.theta.push_back(parse_double(fields[9], where));
    }
    if (columns.empty()) throw ParseError(samples_path.string() + ": no sample rows");

    std::set<Attribute> used_attributes;
    for (const PairSpec& pair : scene.pairs) used_attributes.insert(pair.attribute);

    FisherReport report;
    std::vector<HistogramRow> hist_rows;
    for (const std::string& model : model_order) {
        std::vector<SampleSet> sets;
        for (const Target& target : scene.targets) {
            const auto it = columns.find({model, target.name});
            if (it == columns.end()) continue;
            const Columns& col = it->second;
            sets.push_back({target.name, Attribute::Hue, col.h});
            sets.push_back({target.name, Attribute::Theta,
                            drop_zero_magnitude(col.theta, col.r)});
            sets.push_back({target.name, Attribute::Saturation, col.s});
            sets.push_back({target.name, Attribute::R, col.r});
            sets.push_back({target.name, Attribute::Brightness, col.v});
        }
        FisherReport part = build_report(model, sets, scene.pairs);
        report.rows.insert(report.rows.end(), part.rows.begin(), part.rows.end());
        for (const SampleSet& set : sets) {
            if (used_attributes.contains(set.attribute)) {
                const std::vector<HistogramRow> part_rows =
                    histogram(model, set, kHistogramBinWidth);
                hist_rows.insert(hist_rows.end(), part_rows.begin(), part_rows.end());
            }
        }
    }

    const std::filesystem::path fisher_path = config.out_dir / "fisher.csv";
    std::ofstream fisher_out = open_output(fisher_path);
    write_fisher_csv(report, fisher_out, /*mark_extrema=*/true);
    finish_output(fisher_out, fisher_path);

    const std::filesystem::path hist_path = config.out_dir / "histograms.csv";
    std::ofstream hist_out = open_output(hist_path);
    write_histogram_csv(hist_rows, hist_out);
    finish_output(hist_out, hist_path);
}

void cmd_sweep_gamma(RunConfig config, std::span<const double> gammas) {
    config.models.clear();
    const std::span<const double> sweep =
        gammas.empty() ? std::span<const double>(kDefaultGammaSweep) : gammas;
    for (double gamma : sweep) {
        config.models.push_back({ModelKind::CsRetinexLog, gamma});
    }
    cmd_generate(config);
    cmd_run(config);
    cmd_evaluate(config);
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path.string());

    RunConfig config = std::move(base);
    bool in_model = false;
    bool replaced_models = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        const std::string where = path.string() + " line " + std::to_string(line_no);

        if (text.front() == '[') {
            if (text != "[model]") {
                throw ParseError(where + ": unknown section " + text);
            }
            if (!replaced_models) {
                config.models.clear();
                replaced_models = true;
            }
            config.models.push_back({});
            in_model = true;
            continue;
        }

        const std::size_t eq = text.find('=');
        if (eq == std::string::npos) {
            throw ParseError(where + ": expected key = value");
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));

        if (in_model) {
            ModelSpec& spec = config.models.back();
            if (key == "kind") {
                spec.kind = parse_model_kind(value, where);
            } else if (key == "gamma") {
                spec.gamma = parse_double(value, where);
            } else {
                throw ParseError(where + ": unknown model key '" + key + "'");
            }
            continue;
        }

        if (key == "scene") {
            config.scene = value;
        } else if (key == "seed") {
            const long seed = parse_long(value, where);
            if (seed < 0 || seed > 0xFFFFFFFFL) {
                throw ParseError(where + ": seed out of range");
            }
            config.seed = static_cast<std::uint32_t>(seed);
        } else if (key == "out") {
            config.out_dir = value;
        } else if (key == "sigma1") {
            config.sigma1 = parse_double(value, where);
        } else if (key == "sigma2") {
            config.sigma2 = parse_double(value, where);
        } else if (key == "filter") {
            config.filter_path = parse_filter(value, where);
        } else if (key == "saturation_threshold") {
            config.saturation_threshold = parse_double(value, where);
        } else if (key == "exposures") {
            const std::vector<std::string> parts = split(value, ',');
            if (parts.size() != 3) {
                throw ParseError(where + ": expected three comma-separated exposures");
            }
            for (int k = 0; k < 3; ++k) {
                config.exposures[k] = parse_double(trim(parts[k]), where);
            }
        } else if (key == "dump_captures") {
            if (value == "true" || value == "1") config.dump_captures = true;
            else if (value == "false" || value == "0") config.dump_captures = false;
            else throw ParseError(where + ": expected true or false for dump_captures");
        } else {
            throw ParseError(where + ": unknown key '" + key + "'");
        }
    }
    return config;
}

} // namespace retcc
