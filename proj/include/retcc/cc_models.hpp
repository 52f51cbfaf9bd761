#pragma once

#include <array>
#include <string>

#include "retcc/image.hpp"
#include "retcc/spatial_filter.hpp"

namespace retcc {

/// Center/surround retinex variants differ only in the intensity encoder;
/// PureLog is the idealized test encoder (exact gain cancellation), not part
/// of the evaluated model set.
enum class ModelKind {
    CsRetinexLog,
    CsRetinexNr,
    CsRetinexLinear,
    CsRetinexPureLog,
    GrayWorld,
};

struct ModelSpec {
    ModelKind kind = ModelKind::CsRetinexLog;
    double gamma = 6.0; // log encoder only
    double sigma1 = 1.057;
    double sigma2 = 17.964;
    FilterPath filter_path = FilterPath::Direct;
};

/// Stable identifier used in CSV output and file names:
/// log_g<gamma>, nr, linear, pure_log, gw.
std::string model_name(const ModelSpec& spec);

bool is_retinex(ModelKind kind);

/// Encode per channel (adaptive bounds from the channel's own histogram),
/// then difference-of-Gaussians. A channel whose conversion bounds collapse
/// carries no usable range; it is encoded as constant mid-scale so the
/// filter stage cancels it to zero response.
RetinexOutput run_cs_retinex(const LinearImage& img, const ModelSpec& spec);

/// Per-channel scale factors 128 / mean(channel).
/// Throws std::invalid_argument if a channel mean is zero.
std::array<double, 3> gray_world_gains(const LinearImage& img);

/// X_c = clamp(128 / mu_c * I_c, 0, 255); before clamping every channel
/// mean is exactly 128.
RetinexOutput run_gray_world(const LinearImage& img);

/// Dispatch on spec.kind.
RetinexOutput run_model(const LinearImage& img, const ModelSpec& spec);

/// Signed response to displayable intensity: X' = clamp(X + 128, 0, 255).
/// Gray-world output already lives in [0,255] and passes through unshifted.
EncodedImage to_display(const RetinexOutput& x, ModelKind kind);

} // namespace retcc
