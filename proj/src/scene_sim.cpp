#include "retcc/scene_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace retcc {
namespace {

using Rgb = std::array<double, 3>;

constexpr Rgb kWhiteFrame{0.85, 0.85, 0.85};
constexpr int kBackgroundTile = 8;

std::uint32_t fnv1a(std::string_view text) {
    std::uint32_t hash = 2166136261u;
    for (char ch : text) {
        hash ^= static_cast<unsigned char>(ch);
        hash *= 16777619u;
    }
    return hash;
}

void fill_rect(Image& rho, int x0, int y0, int w, int h, const Rgb& color) {
    for (int c = 0; c < kChannels; ++c) {
        for (int y = y0; y < y0 + h; ++y) {
            for (int x = x0; x < x0 + w; ++x) {
                rho.at(x, y, c) = color[c];
            }
        }
    }
}

/// One-pixel square ring at Chebyshev distance `half` from (cx, cy).
void draw_ring(Image& rho, int cx, int cy, int half, const Rgb& color) {
    for (int dy = -half; dy <= half; ++dy) {
        for (int dx = -half; dx <= half; ++dx) {
            if (std::max(std::abs(dx), std::abs(dy)) == half) {
                for (int c = 0; c < kChannels; ++c) {
                    rho.at(cx + dx, cy + dy, c) = color[c];
                }
            }
        }
    }
}

/// Neutral gray tiles with per-tile level drawn from the seeded generator;
/// the arithmetic avoids distribution classes so the texture is identical
/// on every platform for a given seed.
Image textured_background(std::uint32_t seed) {
    Image rho(kSceneWidth, kSceneHeight);
    std::mt19937 rng(seed);
    for (int ty = 0; ty < kSceneHeight; ty += kBackgroundTile) {
        for (int tx = 0; tx < kSceneWidth; tx += kBackgroundTile) {
            const double unit = rng() / 4294967296.0;
            const double gray = 0.30 + 0.25 * unit;
            fill_rect(rho, tx, ty, kBackgroundTile, kBackgroundTile, {gray, gray, gray});
        }
    }
    return rho;
}

ReflectanceScene make_cartons(std::uint32_t seed) {
    ReflectanceScene scene;
    scene.name = "cartons";
    scene.rho = textured_background(seed ^ fnv1a(scene.name));

    struct Carton {
        const char* name;
        Rgb color;
        int cx;
    };
    const Carton cartons[] = {
        {"red", {0.70, 0.10, 0.10}, 16},
        {"yellow", {0.70, 0.65, 0.10}, 48},
        {"green", {0.10, 0.60, 0.12}, 112},
        {"blue", {0.10, 0.15, 0.65}, 144},
    };
    const int cy = kSceneHeight / 2;
    for (const auto& carton : cartons) {
        fill_rect(scene.rho, carton.cx - 12, cy - 18, 24, 36, carton.color);
        draw_ring(scene.rho, carton.cx, cy, 3, kWhiteFrame);
        scene.targets.push_back({carton.name, Roi{carton.cx - 1, cy - 1, 3, 3}});
    }

    const std::pair<const char*, const char*> hue_pairs[] = {
        {"red", "yellow"}, {"yellow", "green"}, {"green", "blue"}, {"blue", "red"}};
    for (Attribute attr : {Attribute::Hue, Attribute::Theta}) {
        for (const auto& [a, b] : hue_pairs) {
            scene.pairs.push_back({attr, a, b});
        }
    }
    return scene;
}

ReflectanceScene make_patches(std::string_view name, const Rgb& dull, std::uint32_t seed) {
    ReflectanceScene scene;
    scene.name = name;
    scene.rho = textured_background(seed ^ fnv1a(scene.name));

    // bright doubles the reflected power at the dull chroma ratio; vivid
    // shifts power into the dominant channel at the dull total.
    const Rgb bright{2 * dull[0], 2 * dull[1], 2 * dull[2]};
    Rgb vivid = dull;
    const int dominant = static_cast<int>(std::max_element(dull.begin(), dull.end()) -
                                          dull.begin());
    for (int c = 0; c < kChannels; ++c) {
        vivid[c] = c == dominant ? dull[c] + 0.12 : dull[c] - 0.06;
    }

    struct Patch {
        const char* name;
        Rgb color;
        int cx;
    };
    const Patch patches[] = {
        {"dull", dull, 36},
        {"bright", bright, 80},
        {"vivid", vivid, 124},
    };
    const int cy = kSceneHeight / 2;
    for (const auto& patch : patches) {
        fill_rect(scene.rho, patch.cx - 13, cy - 13, 26, 26, patch.color);
        draw_ring(scene.rho, patch.cx, cy, 8, kWhiteFrame);
        scene.targets.push_back({patch.name, Roi{patch.cx - 5, cy - 5, 10, 10}});
    }

    scene.pairs = {
        {Attribute::Saturation, "vivid", "dull"},
        {Attribute::R, "vivid", "dull"},
        {Attribute::Brightness, "bright", "dull"},
    };
    return scene;
}

} // namespace

std::string_view led_name(LedColor led) {
    switch (led) {
    case LedColor::Red: return "red";
    case LedColor::Yellow: return "yellow";
    case LedColor::Green: return "green";
    case LedColor::Blue: return "blue";
    case LedColor::White: return "white";
    }
    return "unknown";
}

std::array<double, 3> led_gains(LedColor led) {
    switch (led) {
    case LedColor::Red: return {1.0, 0.05, 0.05};
    case LedColor::Yellow: return {1.0, 1.0, 0.05};
    case LedColor::Green: return {0.05, 1.0, 0.05};
    case LedColor::Blue: return {0.05, 0.05, 1.0};
    case LedColor::White: return {1.0, 1.0, 1.0};
    }
    return {};
}

std::string condition_name(const IlluminationCondition& cond) {
    return std::string(led_name(cond.left)) + "_" + std::string(led_name(cond.right));
}

std::vector<IlluminationCondition> enumerate_conditions() {
    const LedColor palette[] = {LedColor::Red, LedColor::Yellow, LedColor::Green,
                                LedColor::Blue};
    std::vector<IlluminationCondition> conditions;
    conditions.reserve(17);
    for (LedColor left : palette) {
        for (LedColor right : palette) {
            conditions.push_back({left, right});
        }
    }
    conditions.push_back({LedColor::White, LedColor::White});
    return conditions;
}

std::vector<std::string_view> builtin_scene_names() {
    return {"cartons", "red-patches", "green-patches"};
}

ReflectanceScene make_scene(std::string_view name, std::uint32_t seed) {
    if (name == "cartons") return make_cartons(seed);
    if (name == "red-patches") return make_patches(name, {0.30, 0.12, 0.12}, seed);
    if (name == "green-patches") return make_patches(name, {0.12, 0.30, 0.12}, seed);
    throw std::invalid_argument("unknown scene '" + std::string(name) + "'");
}

LinearImage render(const ReflectanceScene& scene, const IlluminationCondition& cond) {
    const int w = scene.rho.width();
    const int h = scene.rho.height();
    const std::array<double, 3> left = led_gains(cond.left);
    const std::array<double, 3> right = led_gains(cond.right);

    // Illuminant depends on the column only: lamps cross-fade linearly.
    std::vector<double> illum(static_cast<std::size_t>(kChannels) * w);
    for (int x = 0; x < w; ++x) {
        const double w_right = w > 1 ? static_cast<double>(x) / (w - 1) : 0.5;
        const double w_left = 1.0 - w_right;
        for (int c = 0; c < kChannels; ++c) {
            illum[static_cast<std::size_t>(c) * w + x] =
                kCeilingPower + kLampPower * (left[c] * w_left + right[c] * w_right);
        }
    }

    LinearImage img(w, h);
    for (int c = 0; c < kChannels; ++c) {
        const double* source = scene.rho.plane(c).data();
        const double* e = illum.data() + static_cast<std::size_t>(c) * w;
        auto dst = img.plane(c);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const std::size_t i = static_cast<std::size_t>(y) * w + x;
                dst[i] = source[i] * e[x];
            }
        }
    }
    return img;
}

ExposureStack capture_stack(const LinearImage& img, const std::array<double, 3>& exposures) {
    if (!(exposures[0] > exposures[1] && exposures[1] > exposures[2] && exposures[2] > 0)) {
        throw std::invalid_argument(
            "capture_stack: exposures must be strictly descending and positive");
    }
    ExposureStack stack;
    stack.exposures = exposures;
    const auto& src = img.samples();
    for (int k = 0; k < 3; ++k) {
        EncodedImage capture(img.width(), img.height());
        auto& dst = capture.samples();
        const double t = exposures[k];
        for (std::size_t i = 0; i < src.size(); ++i) {
            const double scaled = t * src[i];
            dst[i] = scaled <= 0.0 ? 0.0 : (scaled >= 255.0 ? 255.0 : std::round(scaled));
        }
        stack.captures[k] = std::move(capture);
    }
    return stack;
}

LinearImage merge_hdr(const ExposureStack& stack, double sat_threshold) {
    if (!(sat_threshold > 0.0 && sat_threshold <= 255.0)) {
        throw std::invalid_argument("merge_hdr: saturation threshold must be in (0,255]");
    }
    for (int k = 1; k < 3; ++k) {
        if (!stack.captures[k].same_shape(stack.captures[0])) {
            throw std::invalid_argument("merge_hdr: capture shapes differ");
        }
    }
    const int w = stack.captures[0].width();
    const int h = stack.captures[0].height();
    LinearImage out(w, h);
    auto& dst = out.samples();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        // Longest exposure below saturation wins; the shortest capture is the
        // last resort even when it saturates too.
        double value = stack.captures[2].samples()[i] / stack.exposures[2];
        for (int k = 0; k < 2; ++k) {
            if (stack.captures[k].samples()[i] < sat_threshold) {
                value = stack.captures[k].samples()[i] / stack.exposures[k];
                break;
            }
        }
        dst[i] = value;
    }
    return out;
}

} // namespace retcc
