#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "retcc/image.hpp"
#include "retcc/metrics.hpp"

namespace retcc {

/// Dimensions of every builtin scene.
inline constexpr int kSceneWidth = 160;
inline constexpr int kSceneHeight = 120;

/// Radiant power of one colored lamp at full drive, and of the constant
/// white ceiling light that keeps every channel nonzero everywhere.
inline constexpr double kLampPower = 1500.0;
inline constexpr double kCeilingPower = 60.0;

enum class LedColor { Red, Yellow, Green, Blue, White };

std::string_view led_name(LedColor led);

/// Relative RGB emission of one LED at unit drive. Chromatic LEDs keep a
/// 0.05 floor in their off channels so no channel is ever fully dark.
std::array<double, 3> led_gains(LedColor led);

/// One darkroom lighting setup: two variable-color lamps at the left and
/// right walls plus the fixed white ceiling light.
struct IlluminationCondition {
    LedColor left = LedColor::White;
    LedColor right = LedColor::White;
};

/// "<left>_<right>", e.g. "red_blue".
std::string condition_name(const IlluminationCondition& cond);

/// The full suite: {red,yellow,green,blue} x {red,yellow,green,blue} in
/// left-major order, then the all-white condition last. 17 entries.
std::vector<IlluminationCondition> enumerate_conditions();

/// Measurement region, named after the color class it holds.
struct Target {
    std::string name;
    Roi roi;
};

/// A static scene: per-pixel RGB reflectance in [0,1] plus the targets to
/// measure and the discrimination pairs they are evaluated on.
struct ReflectanceScene {
    std::string name;
    Image rho;
    std::vector<Target> targets;
    std::vector<PairSpec> pairs;
};

/// Builtin scene by name: "cartons" (four hue targets, 3x3 ROIs),
/// "red-patches" or "green-patches" (dull/bright/vivid triples, 10x10 ROIs).
/// The seed only varies the neutral background texture.
/// Throws std::invalid_argument for unknown names.
ReflectanceScene make_scene(std::string_view name, std::uint32_t seed);

std::vector<std::string_view> builtin_scene_names();

/// Lambertian radiance: I_c(x) = rho_c(x) * (E_ceiling,c
///   + g_left,c * (1 - x/(w-1)) + g_right,c * x/(w-1)), lamps cross-fading
/// linearly across the image width.
LinearImage render(const ReflectanceScene& scene, const IlluminationCondition& cond);

inline constexpr std::array<double, 3> kDefaultExposures{1.0, 0.25, 0.0625};

/// Three 8-bit captures of one radiance image, longest exposure first.
struct ExposureStack {
    std::array<EncodedImage, 3> captures;
    std::array<double, 3> exposures = kDefaultExposures;
};

/// Quantized captures: clamp(round(t * I), 0, 255) per exposure.
/// Multipliers must be strictly descending and positive.
ExposureStack capture_stack(const LinearImage& img,
                            const std::array<double, 3>& exposures = kDefaultExposures);

/// Saturation-replacement merge: per pixel, the longest exposure still below
/// the saturation threshold wins and its value is rescaled by 1/t; pixels
/// saturated even in the shortest exposure keep that capture's value / t.
LinearImage merge_hdr(const ExposureStack& stack, double sat_threshold = 255.0);

} // namespace retcc
