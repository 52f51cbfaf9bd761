#include "retcc/spatial_filter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace retcc {

namespace {

std::vector<double> sampled_gaussian(double sigma, int radius) {
    std::vector<double> w(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        double v = std::exp(-0.5 * i * i / (sigma * sigma));
        w[i + radius] = v;
        sum += v;
    }
    for (double& v : w) v /= sum;
    return w;
}

// Correlate one plane along an axis with replicate-edge borders and an
// optional sample spacing (for dilated cascade levels).
void correlate_axis(const double* src, int w, int h, const double* wgt, int radius,
                    int spacing, bool horizontal, double* dst) {
    const int len = horizontal ? w : h;
    const int lines = horizontal ? h : w;
    const int stride = horizontal ? 1 : w;
    const int line_stride = horizontal ? w : 1;
    const int reach = radius * spacing;

    for (int line = 0; line < lines; ++line) {
        const double* s = src + static_cast<std::ptrdiff_t>(line) * line_stride;
        double* d = dst + static_cast<std::ptrdiff_t>(line) * line_stride;
        const int interior_lo = std::min(reach, len);
        const int interior_hi = std::max(interior_lo, len - reach);
        int i = 0;
        for (; i < interior_lo; ++i) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                int j = std::clamp(i + k * spacing, 0, len - 1);
                acc += wgt[k + radius] * s[static_cast<std::ptrdiff_t>(j) * stride];
            }
            d[static_cast<std::ptrdiff_t>(i) * stride] = acc;
        }
        for (; i < interior_hi; ++i) {
            double acc = 0.0;
            const double* p = s + static_cast<std::ptrdiff_t>(i - reach) * stride;
            for (int k = 0; k <= 2 * radius; ++k) {
                acc += wgt[k] * p[static_cast<std::ptrdiff_t>(k) * spacing * stride];
            }
            d[static_cast<std::ptrdiff_t>(i) * stride] = acc;
        }
        for (; i < len; ++i) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                int j = std::clamp(i + k * spacing, 0, len - 1);
                acc += wgt[k + radius] * s[static_cast<std::ptrdiff_t>(j) * stride];
            }
            d[static_cast<std::ptrdiff_t>(i) * stride] = acc;
        }
    }
}

void correlate_plane(double* plane, std::vector<double>& scratch, int w, int h,
                     const std::vector<double>& wgt, int radius, int spacing) {
    scratch.resize(static_cast<std::size_t>(w) * h);
    correlate_axis(plane, w, h, wgt.data(), radius, spacing, true, scratch.data());
    correlate_axis(scratch.data(), w, h, wgt.data(), radius, spacing, false, plane);
}

struct CascadeLevel {
    std::vector<double> weights;
    int radius;
    int spacing;
};

// Binomial kernel per octave plus a dilated Gaussian cap for the residual
// variance. The binomial chain has exact spectral zeros at every alias
// frequency of the deeper levels, which keeps the composite close to a true
// Gaussian of the same total variance.
std::vector<CascadeLevel> cascade_plan(double sigma) {
    const double var = sigma * sigma;
    int levels = 0;
    for (int l = 1; l < 20; ++l) {
        double chain_var = (std::exp2(2.0 * l) - 1.0) / 3.0;
        double cap_var = var - chain_var;
        if (cap_var >= 0.64 * std::exp2(2.0 * l)) {
            levels = l;
        } else {
            break;
        }
    }
    if (levels == 0) return {};

    std::vector<CascadeLevel> plan;
    const std::vector<double> binomial{1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
    for (int l = 0; l < levels; ++l) {
        plan.push_back({binomial, 2, 1 << l});
    }
    const double chain_var = (std::exp2(2.0 * levels) - 1.0) / 3.0;
    const int cap_spacing = 1 << levels;
    const double cap_sigma = std::sqrt(var - chain_var) / cap_spacing;
    const int cap_radius = std::max(1, static_cast<int>(std::ceil(3.2 * cap_sigma)));
    plan.push_back({sampled_gaussian(cap_sigma, cap_radius), cap_radius, cap_spacing});
    return plan;
}

std::vector<double> pad_replicate(std::span<const double> src, int w, int h, int p) {
    const int pw = w + 2 * p;
    const int ph = h + 2 * p;
    std::vector<double> out(static_cast<std::size_t>(pw) * ph);
    for (int y = 0; y < ph; ++y) {
        int sy = std::clamp(y - p, 0, h - 1);
        for (int x = 0; x < pw; ++x) {
            int sx = std::clamp(x - p, 0, w - 1);
            out[static_cast<std::size_t>(y) * pw + x] =
                src[static_cast<std::size_t>(sy) * w + sx];
        }
    }
    return out;
}

} // namespace

GaussianSpec GaussianSpec::truncated(double sigma) {
    return with_radius(sigma, static_cast<int>(std::ceil(3.0 * sigma)));
}

GaussianSpec GaussianSpec::with_radius(double sigma, int radius) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("GaussianSpec: sigma must be positive");
    }
    if (radius < static_cast<int>(std::ceil(3.0 * sigma))) {
        throw std::invalid_argument("GaussianSpec: radius below 3*sigma truncation");
    }
    GaussianSpec spec;
    spec.sigma = sigma;
    spec.radius = radius;
    spec.weights = sampled_gaussian(sigma, radius);
    return spec;
}

Image gaussian_filter(const Image& img, const GaussianSpec& spec) {
    Image out = img;
    std::vector<double> scratch;
    for (int c = 0; c < kChannels; ++c) {
        correlate_plane(out.plane(c).data(), scratch, img.width(), img.height(),
                        spec.weights, spec.radius, 1);
    }
    return out;
}

EncodedImage gaussian_filter(const EncodedImage& img, const GaussianSpec& spec) {
    return EncodedImage(gaussian_filter(static_cast<const Image&>(img), spec));
}

Image hdc_gaussian(const Image& img, double sigma) {
    if (!(sigma >= 1.0)) {
        throw std::invalid_argument("hdc_gaussian: sigma must be >= 1");
    }
    auto plan = cascade_plan(sigma);
    const int deepest = plan.empty() ? 0 : plan.back().spacing;
    if (sigma < 3.0 || plan.empty() || std::min(img.width(), img.height()) < deepest) {
        return gaussian_filter(img, GaussianSpec::truncated(sigma));
    }

    // One replicate pad of the deepest spacing pushes the border interaction
    // of the stacked passes far enough out; the crop returns the original frame.
    const int p = deepest;
    const int pw = img.width() + 2 * p;
    const int ph = img.height() + 2 * p;
    Image out(img.width(), img.height());
    std::vector<double> scratch;
    for (int c = 0; c < kChannels; ++c) {
        auto plane = pad_replicate(img.plane(c), img.width(), img.height(), p);
        for (const auto& level : plan) {
            correlate_plane(plane.data(), scratch, pw, ph, level.weights, level.radius,
                            level.spacing);
        }
        auto dst = out.plane(c);
        for (int y = 0; y < img.height(); ++y) {
            const double* row = plane.data() + static_cast<std::size_t>(y + p) * pw + p;
            std::copy(row, row + img.width(), dst.begin() + static_cast<std::size_t>(y) * img.width());
        }
    }
    return out;
}

RetinexOutput dog(const Image& img, double sigma1, double sigma2, FilterPath path) {
    if (!(sigma1 < sigma2)) {
        throw std::invalid_argument("dog: requires sigma1 < sigma2");
    }
    Image center, surround;
    if (path == FilterPath::Hdc) {
        center = hdc_gaussian(img, sigma1);
        surround = hdc_gaussian(img, sigma2);
    } else {
        center = gaussian_filter(img, GaussianSpec::truncated(sigma1));
        surround = gaussian_filter(img, GaussianSpec::truncated(sigma2));
    }
    RetinexOutput out(img.width(), img.height());
    auto& d = out.samples();
    const auto& a = center.samples();
    const auto& b = surround.samples();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a[i] - b[i];
    return out;
}

} // namespace retcc
