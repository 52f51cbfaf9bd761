#include "retcc/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "retcc/error.hpp"

namespace retcc {

namespace {

double order_statistic(std::vector<double>& scratch, std::size_t rank) {
    auto nth = scratch.begin() + static_cast<std::ptrdiff_t>(rank);
    std::nth_element(scratch.begin(), nth, scratch.end());
    return *nth;
}

} // namespace

IntensityBounds compute_bounds(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n <= 256) {
        throw std::invalid_argument("compute_bounds: need more than 256 pixels");
    }
    // Smallest values whose cumulative count exceeds n/256 and n - n/256.
    const std::size_t lo_index = n / 256;
    const std::size_t hi_index = n - (n + 255) / 256;
    std::vector<double> scratch(values.begin(), values.end());
    IntensityBounds b;
    b.i_min = order_statistic(scratch, lo_index);
    b.i_max = order_statistic(scratch, hi_index);
    if (!(b.i_min < b.i_max)) {
        throw DegenerateBoundsError("compute_bounds: i_min == i_max");
    }
    return b;
}

std::array<IntensityBounds, 3> image_bounds(const LinearImage& img) {
    return {compute_bounds(img.plane(0)), compute_bounds(img.plane(1)),
            compute_bounds(img.plane(2))};
}

std::array<double, 3> channel_medians(const LinearImage& img) {
    std::array<double, 3> out{};
    for (int c = 0; c < kChannels; ++c) {
        auto pl = img.plane(c);
        std::vector<double> scratch(pl.begin(), pl.end());
        const std::size_t n = scratch.size();
        double hi = order_statistic(scratch, n / 2);
        if (n % 2 == 1) {
            out[c] = hi;
        } else {
            double lo = *std::max_element(scratch.begin(), scratch.begin() + n / 2);
            out[c] = 0.5 * (lo + hi);
        }
    }
    return out;
}

LogParams make_log_params(const IntensityBounds& bounds, double gamma) {
    if (!(bounds.i_min < bounds.i_max)) {
        throw DegenerateBoundsError("make_log_params: degenerate bounds");
    }
    LogParams p;
    p.gamma = gamma;
    p.alpha = bounds.i_min - std::exp2(gamma);
    p.beta = 255.0 / (std::log2(bounds.i_max - p.alpha) - gamma);
    return p;
}

NrParams make_nr_params(const IntensityBounds& bounds, double i_h) {
    if (!(bounds.i_min < bounds.i_max)) {
        throw DegenerateBoundsError("make_nr_params: degenerate bounds");
    }
    if (!(i_h > 0.0)) {
        throw std::invalid_argument("make_nr_params: i_h must be positive");
    }
    NrParams p;
    p.i_h = i_h;
    p.v_m = 255.0 * (bounds.range() + i_h) / bounds.range();
    return p;
}

double log_transfer(double intensity, const IntensityBounds& bounds, const LogParams& params) {
    if (intensity <= bounds.i_min) return 0.0;
    if (intensity >= bounds.i_max) return 255.0;
    const double level = params.beta * (std::log2(intensity - params.alpha) - params.gamma);
    return std::clamp(level, 0.0, 255.0); // guard 1-ulp overshoot near the bounds
}

double nr_transfer(double intensity, const IntensityBounds& bounds, const NrParams& params) {
    if (intensity <= bounds.i_min) return 0.0;
    if (intensity >= bounds.i_max) return 255.0;
    const double u = intensity - bounds.i_min;
    return std::clamp(params.v_m * u / (u + params.i_h), 0.0, 255.0);
}

double linear_transfer(double intensity, const IntensityBounds& bounds) {
    if (intensity <= bounds.i_min) return 0.0;
    if (intensity >= bounds.i_max) return 255.0;
    return std::clamp(255.0 * (intensity - bounds.i_min) / bounds.range(), 0.0, 255.0);
}

namespace {

template <typename Fn>
EncodedImage map_channels(const LinearImage& img, Fn&& per_channel_value) {
    EncodedImage out(img.width(), img.height());
    for (int c = 0; c < kChannels; ++c) {
        auto src = img.plane(c);
        auto dst = out.plane(c);
        for (std::size_t i = 0; i < src.size(); ++i) {
            dst[i] = per_channel_value(c, src[i]);
        }
    }
    return out;
}

} // namespace

EncodedImage log_encode(const LinearImage& img, double gamma,
                        const std::array<IntensityBounds, 3>& bounds) {
    std::array<LogParams, 3> params;
    for (int c = 0; c < kChannels; ++c) params[c] = make_log_params(bounds[c], gamma);
    return map_channels(img, [&](int c, double v) {
        return log_transfer(v, bounds[c], params[c]);
    });
}

EncodedImage nr_encode(const LinearImage& img,
                       const std::array<IntensityBounds, 3>& bounds,
                       const std::array<double, 3>& i_h) {
    std::array<NrParams, 3> params;
    for (int c = 0; c < kChannels; ++c) params[c] = make_nr_params(bounds[c], i_h[c]);
    return map_channels(img, [&](int c, double v) {
        return nr_transfer(v, bounds[c], params[c]);
    });
}

EncodedImage linear_encode(const LinearImage& img,
                           const std::array<IntensityBounds, 3>& bounds) {
    for (const auto& b : bounds) {
        if (!(b.i_min < b.i_max)) {
            throw DegenerateBoundsError("linear_encode: degenerate bounds");
        }
    }
    return map_channels(img, [&](int c, double v) {
        return linear_transfer(v, bounds[c]);
    });
}

Image pure_log_encode(const LinearImage& img, double eps) {
    Image out(img.width(), img.height());
    const auto& src = img.samples();
    auto& dst = out.samples();
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = 32.0 * std::log2(src[i] + eps);
    }
    return out;
}

} // namespace retcc
