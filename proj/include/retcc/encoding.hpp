#pragma once

#include <array>
#include <span>

#include "retcc/image.hpp"

namespace retcc {

/// Conversion range estimated from the cumulative distribution of a channel.
struct IntensityBounds {
    double i_min = 0.0;
    double i_max = 0.0;
    double range() const { return i_max - i_min; }
};

/// Lower/upper conversion bounds as the order statistics at ranks
/// floor(n/256)+1 and floor(n - n/256)+1, i.e. the smallest values whose
/// cumulative pixel count exceeds n/256 and n - n/256 respectively.
/// Throws DegenerateBoundsError when the two collapse, std::invalid_argument
/// when n <= 256.
IntensityBounds compute_bounds(std::span<const double> values);

/// Per-channel bounds of a radiance image.
std::array<IntensityBounds, 3> image_bounds(const LinearImage& img);

/// Per-channel medians (semi-saturation default for the Naka-Rushton encoder).
std::array<double, 3> channel_medians(const LinearImage& img);

/// Parameters of L = beta * (log2(I - alpha) - gamma), normalized so that
/// i_min maps to 0 and i_max maps to 255.
struct LogParams {
    double gamma = 0.0;
    double alpha = 0.0; // i_min - 2^gamma
    double beta = 0.0;  // 255 / (log2(i_max - alpha) - gamma)
};

LogParams make_log_params(const IntensityBounds& bounds, double gamma);

/// Naka-Rushton parameters with exponent fixed at 1.
struct NrParams {
    double i_h = 0.0; // semi-saturation intensity, > 0
    double v_m = 0.0; // peak response chosen so i_max maps to 255
};

NrParams make_nr_params(const IntensityBounds& bounds, double i_h);

// Scalar transfer functions (inputs outside [i_min, i_max] are clamped).
double log_transfer(double intensity, const IntensityBounds& bounds, const LogParams& params);
double nr_transfer(double intensity, const IntensityBounds& bounds, const NrParams& params);
double linear_transfer(double intensity, const IntensityBounds& bounds);

EncodedImage log_encode(const LinearImage& img, double gamma,
                        const std::array<IntensityBounds, 3>& bounds);
EncodedImage nr_encode(const LinearImage& img,
                       const std::array<IntensityBounds, 3>& bounds,
                       const std::array<double, 3>& i_h);
EncodedImage linear_encode(const LinearImage& img,
                           const std::array<IntensityBounds, 3>& bounds);

inline constexpr double kPureLogEpsilon = 1e-12;

/// Idealized encoder L = 32*log2(I + eps) without adaptive bounds; turns a
/// per-channel gain into an additive constant exactly, so the center/surround
/// cancellation can be asserted to machine precision. Output is unbounded;
/// test support only, not part of the evaluated model set.
Image pure_log_encode(const LinearImage& img, double eps = kPureLogEpsilon);

} // namespace retcc
