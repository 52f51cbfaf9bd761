#include "retcc/cc_models.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "retcc/encoding.hpp"
#include "retcc/error.hpp"

namespace retcc {
namespace {

// Mid-scale constant for channels whose conversion bounds collapse: the DoG
// of a constant plane is zero, which is the correct "no signal" response.
constexpr double kDegenerateLevel = 127.5;

EncodedImage encode_for(const LinearImage& img, const ModelSpec& spec) {
    EncodedImage encoded(img.width(), img.height());
    std::array<double, 3> medians{};
    if (spec.kind == ModelKind::CsRetinexNr) {
        medians = channel_medians(img);
    }
    for (int c = 0; c < kChannels; ++c) {
        auto src = img.plane(c);
        auto dst = encoded.plane(c);

        IntensityBounds bounds;
        try {
            bounds = compute_bounds(src);
        } catch (const DegenerateBoundsError&) {
            std::ranges::fill(dst, kDegenerateLevel);
            continue;
        }

        switch (spec.kind) {
        case ModelKind::CsRetinexLog: {
            const LogParams params = make_log_params(bounds, spec.gamma);
            for (std::size_t i = 0; i < src.size(); ++i) {
                dst[i] = log_transfer(src[i], bounds, params);
            }
            break;
        }
        case ModelKind::CsRetinexNr: {
            const NrParams params = make_nr_params(bounds, medians[c]);
            for (std::size_t i = 0; i < src.size(); ++i) {
                dst[i] = nr_transfer(src[i], bounds, params);
            }
            break;
        }
        case ModelKind::CsRetinexLinear:
            for (std::size_t i = 0; i < src.size(); ++i) {
                dst[i] = linear_transfer(src[i], bounds);
            }
            break;
        default:
            throw std::invalid_argument("encode_for: not an adaptive retinex encoder");
        }
    }
    return encoded;
}

} // namespace

std::string model_name(const ModelSpec& spec) {
    switch (spec.kind) {
    case ModelKind::CsRetinexLog: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "log_g%.6g", spec.gamma);
        return buf;
    }
    case ModelKind::CsRetinexNr: return "nr";
    case ModelKind::CsRetinexLinear: return "linear";
    case ModelKind::CsRetinexPureLog: return "pure_log";
    case ModelKind::GrayWorld: return "gw";
    }
    return "unknown";
}

bool is_retinex(ModelKind kind) {
    return kind != ModelKind::GrayWorld;
}

RetinexOutput run_cs_retinex(const LinearImage& img, const ModelSpec& spec) {
    if (!is_retinex(spec.kind)) {
        throw std::invalid_argument("run_cs_retinex: spec is not a retinex variant");
    }
    Image encoded = spec.kind == ModelKind::CsRetinexPureLog
                        ? pure_log_encode(img)
                        : Image(encode_for(img, spec));
    return dog(encoded, spec.sigma1, spec.sigma2, spec.filter_path);
}

std::array<double, 3> gray_world_gains(const LinearImage& img) {
    std::array<double, 3> gains{};
    for (int c = 0; c < kChannels; ++c) {
        const double mu = mean(img.plane(c));
        if (mu == 0.0) {
            throw std::invalid_argument("gray_world_gains: channel mean is zero");
        }
        gains[c] = 128.0 / mu;
    }
    return gains;
}

RetinexOutput run_gray_world(const LinearImage& img) {
    const std::array<double, 3> gains = gray_world_gains(img);
    RetinexOutput out(img.width(), img.height());
    for (int c = 0; c < kChannels; ++c) {
        auto src = img.plane(c);
        auto dst = out.plane(c);
        for (std::size_t i = 0; i < src.size(); ++i) {
            dst[i] = std::clamp(gains[c] * src[i], 0.0, 255.0);
        }
    }
    return out;
}

RetinexOutput run_model(const LinearImage& img, const ModelSpec& spec) {
    if (spec.kind == ModelKind::GrayWorld) {
        return run_gray_world(img);
    }
    return run_cs_retinex(img, spec);
}

EncodedImage to_display(const RetinexOutput& x, ModelKind kind) {
    const double offset = kind == ModelKind::GrayWorld ? 0.0 : 128.0;
    EncodedImage out(x.width(), x.height());
    const auto& src = x.samples();
    auto& dst = out.samples();
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = std::clamp(src[i] + offset, 0.0, 255.0);
    }
    return out;
}

} // namespace retcc
