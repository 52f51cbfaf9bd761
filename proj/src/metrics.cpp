#include "retcc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "retcc/error.hpp"
#include "retcc/image.hpp"

namespace retcc {
namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

double wrap360(double deg) {
    deg = std::fmod(deg, 360.0);
    if (deg < 0.0) deg += 360.0;
    if (deg >= 360.0) deg = 0.0; // fmod can land exactly on 360 after rounding
    return deg;
}

double circular_mean_deg(std::span<const double> values) {
    long double s = 0.0L;
    long double c = 0.0L;
    for (double v : values) {
        const double rad = v / kDegPerRad;
        s += std::sin(rad);
        c += std::cos(rad);
    }
    double mean = std::atan2(static_cast<double>(s), static_cast<double>(c)) * kDegPerRad;
    return wrap360(mean);
}

double population_variance(std::span<const double> values, double mu) {
    long double acc = 0.0L;
    for (double v : values) {
        const long double d = static_cast<long double>(v) - mu;
        acc += d * d;
    }
    return static_cast<double>(acc / values.size());
}

void validate_set(const SampleSet& s) {
    if (s.values.size() < 2) {
        throw std::invalid_argument("fisher_criterion: sample set '" + s.label +
                                    "' needs at least 2 values");
    }
    for (double v : s.values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("fisher_criterion: sample set '" + s.label +
                                        "' contains a non-finite value");
        }
    }
}

const SampleSet* find_set(std::span<const SampleSet> samples, Attribute attr,
                          const std::string& label) {
    for (const auto& s : samples) {
        if (s.attribute == attr && s.label == label) return &s;
    }
    return nullptr;
}

} // namespace

std::string_view attribute_name(Attribute attr) {
    switch (attr) {
    case Attribute::Hue: return "hue";
    case Attribute::Theta: return "theta";
    case Attribute::Saturation: return "saturation";
    case Attribute::R: return "r";
    case Attribute::Brightness: return "brightness";
    }
    return "unknown";
}

bool is_circular(Attribute attr) {
    return attr == Attribute::Hue || attr == Attribute::Theta;
}

FisherResult fisher_criterion(const SampleSet& a, const SampleSet& b) {
    if (a.attribute != b.attribute) {
        throw std::invalid_argument("fisher_criterion: attribute mismatch");
    }
    validate_set(a);
    validate_set(b);

    const double mu_a = mean(a.values);
    const double mu_b = mean(b.values);
    const double s_w = population_variance(a.values, mu_a) +
                       population_variance(b.values, mu_b);
    const double diff = mu_b - mu_a;

    FisherResult out;
    if (s_w == 0.0) {
        // Two constant sets: either indistinguishable or trivially separable.
        out.infinite_separability = diff != 0.0;
        out.d = out.infinite_separability ? std::numeric_limits<double>::infinity() : 0.0;
        return out;
    }
    out.d = diff * diff / s_w;
    return out;
}

std::vector<double> circular_align(std::span<const double> values) {
    const double rotation = 180.0 - circular_mean_deg(values);
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(wrap360(v + rotation));
    return out;
}

std::vector<double> drop_zero_magnitude(std::span<const double> theta,
                                        std::span<const double> r) {
    if (theta.size() != r.size()) {
        throw std::invalid_argument("drop_zero_magnitude: length mismatch");
    }
    std::vector<double> out;
    out.reserve(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (r[i] != 0.0) out.push_back(theta[i]);
    }
    return out;
}

FisherReport build_report(const std::string& model,
                          std::span<const SampleSet> samples,
                          std::span<const PairSpec> pairs) {
    if (samples.empty()) {
        throw Error("fisher report: empty sample collection");
    }
    FisherReport report;
    report.rows.reserve(pairs.size());
    for (const auto& pair : pairs) {
        const std::string pair_label = pair.a + " & " + pair.b;
        const SampleSet* sa = find_set(samples, pair.attribute, pair.a);
        const SampleSet* sb = find_set(samples, pair.attribute, pair.b);
        if (sa == nullptr || sb == nullptr) {
            throw Error("fisher report: missing " +
                        std::string(attribute_name(pair.attribute)) +
                        " sample set for pair '" + pair_label + "'");
        }

        SampleSet ta = *sa;
        SampleSet tb = *sb;
        if (is_circular(pair.attribute)) {
            // Align the union with one rotation so the seam moves away from
            // both clusters without disturbing their separation.
            std::vector<double> joint(sa->values);
            joint.insert(joint.end(), sb->values.begin(), sb->values.end());
            const std::vector<double> aligned = circular_align(joint);
            ta.values.assign(aligned.begin(),
                             aligned.begin() + static_cast<std::ptrdiff_t>(sa->values.size()));
            tb.values.assign(aligned.begin() + static_cast<std::ptrdiff_t>(sa->values.size()),
                             aligned.end());
        }

        report.rows.push_back({model, pair.attribute, pair_label, fisher_criterion(ta, tb)});
    }
    return report;
}

std::vector<HistogramRow> histogram(const std::string& model, const SampleSet& set,
                                    double bin_width) {
    if (!(bin_width > 0.0)) {
        throw std::invalid_argument("histogram: bin width must be positive");
    }
    std::map<long long, int> bins;
    for (double v : set.values) {
        bins[static_cast<long long>(std::floor(v / bin_width))] += 1;
    }
    std::vector<HistogramRow> rows;
    rows.reserve(bins.size());
    for (const auto& [index, count] : bins) {
        rows.push_back({model, set.attribute, set.label, index * bin_width, count});
    }
    return rows;
}

std::string format_sig(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

void write_fisher_csv(const FisherReport& report, std::ostream& out, bool mark_extrema) {
    out << (mark_extrema ? "model,attribute,pair,D,flag\n" : "model,attribute,pair,D\n");

    std::map<std::pair<int, std::string>, std::pair<double, double>> extrema;
    if (mark_extrema) {
        for (const auto& row : report.rows) {
            const std::pair<int, std::string> key{static_cast<int>(row.attribute), row.pair};
            auto [it, inserted] = extrema.try_emplace(key, row.result.d, row.result.d);
            if (!inserted) {
                it->second.first = std::min(it->second.first, row.result.d);
                it->second.second = std::max(it->second.second, row.result.d);
            }
        }
    }

    for (const auto& row : report.rows) {
        out << row.model << ',' << attribute_name(row.attribute) << ',' << row.pair << ','
            << (row.result.infinite_separability ? "inf" : format_sig(row.result.d));
        if (mark_extrema) {
            const auto& [lo, hi] = extrema.at({static_cast<int>(row.attribute), row.pair});
            out << ',';
            if (lo != hi) {
                if (row.result.d == hi) out << "max";
                else if (row.result.d == lo) out << "min";
            }
        }
        out << '\n';
    }
}

void write_histogram_csv(std::span<const HistogramRow> rows, std::ostream& out) {
    out << "model,attribute,target,bin_left,count\n";
    for (const auto& row : rows) {
        out << row.model << ',' << attribute_name(row.attribute) << ',' << row.target << ','
            << format_sig(row.bin_left) << ',' << row.count << '\n';
    }
}

} // namespace retcc
