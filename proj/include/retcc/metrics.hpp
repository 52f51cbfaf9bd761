#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace retcc {

/// Measured quantity a sample set ranges over.
enum class Attribute { Hue, Theta, Saturation, R, Brightness };

std::string_view attribute_name(Attribute attr);

/// Hue-like attributes live on a 0..360 circle and need alignment before
/// linear variance is meaningful.
bool is_circular(Attribute attr);

/// One target's measurements, one value per illumination condition.
struct SampleSet {
    std::string label;
    Attribute attribute = Attribute::Hue;
    std::vector<double> values;
};

/// Separability of two sample sets. When the within-class variance is zero
/// the criterion has no finite value: distinct means are flagged as
/// infinitely separable instead of reported as a number.
struct FisherResult {
    double d = 0.0;
    bool infinite_separability = false;
};

/// D = (mu_b - mu_a)^2 / (s_a^2 + s_b^2) with population variances
/// (divide by n). Identical constant sets yield D = 0.
/// Throws std::invalid_argument on attribute mismatch, fewer than two
/// values, or non-finite values.
FisherResult fisher_criterion(const SampleSet& a, const SampleSet& b);

/// Rotates degree values so their circular mean lands on 180, then wraps
/// into [0,360). A rotation is an isometry mod 360, so pairwise distances
/// survive while the wrap seam moves away from the data.
std::vector<double> circular_align(std::span<const double> values);

/// Removes entries whose paired magnitude is zero; the polar angle carries
/// no information at the origin. Both spans must have equal length.
std::vector<double> drop_zero_magnitude(std::span<const double> theta,
                                        std::span<const double> r);

/// Request to compare two labeled targets on one attribute.
struct PairSpec {
    Attribute attribute = Attribute::Hue;
    std::string a;
    std::string b;
};

struct FisherRow {
    std::string model;
    Attribute attribute = Attribute::Hue;
    std::string pair; // "a & b"
    FisherResult result;
};

struct FisherReport {
    std::vector<FisherRow> rows;
};

/// One row per pair, in pair order. Circular attributes are aligned as a
/// union first (one shared rotation per pair) so the criterion sees the
/// between-set separation rather than the wrap seam.
/// Throws Error when the collection is empty or a pair's set is missing.
FisherReport build_report(const std::string& model,
                          std::span<const SampleSet> samples,
                          std::span<const PairSpec> pairs);

/// Histogram of one sample set with fixed-width bins anchored at zero;
/// only occupied bins are emitted, in ascending order.
struct HistogramRow {
    std::string model;
    Attribute attribute = Attribute::Hue;
    std::string target;
    double bin_left = 0.0;
    int count = 0;
};

std::vector<HistogramRow> histogram(const std::string& model, const SampleSet& set,
                                    double bin_width);

/// `model,attribute,pair,D` with 6 significant digits; infinite
/// separability prints as "inf". With mark_extrema a fifth `flag` column
/// labels the max and min D within each (attribute, pair) group.
void write_fisher_csv(const FisherReport& report, std::ostream& out,
                      bool mark_extrema = false);

/// `model,attribute,target,bin_left,count`.
void write_histogram_csv(std::span<const HistogramRow> rows, std::ostream& out);

/// Shared numeric CSV formatting: shortest form with 6 significant digits.
std::string format_sig(double value);

} // namespace retcc
