#include "retcc/colorspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace retcc {

HsvColor rgb_to_hsv(double r, double g, double b) {
    const double v = std::max({r, g, b});
    const double lo = std::min({r, g, b});
    const double chroma = v - lo;

    HsvColor out;
    out.v = v;
    if (chroma == 0.0) {
        return out; // r == g == b: hue and saturation both defined as 0
    }

    double h = 0.0;
    if (v == r) {
        h = 60.0 * (g - b) / chroma;
    } else if (v == g) {
        h = 120.0 + 60.0 * (b - r) / chroma;
    } else {
        h = 240.0 + 60.0 * (r - g) / chroma;
    }
    if (h < 0.0) h += 360.0;

    out.h = h;
    out.s = chroma / v * 255.0;
    return out;
}

DoColor retinex_to_do(double x_r, double x_g, double x_b) {
    DoColor out;
    out.o_rg = x_r - x_g;
    out.o_yb = 0.5 * (x_r + x_g) - x_b;
    out.r = std::hypot(out.o_rg, out.o_yb);
    if (out.r == 0.0) {
        return out; // achromatic: theta stays at the 0 placeholder
    }
    double theta = std::atan2(out.o_yb, out.o_rg) * 180.0 / std::numbers::pi;
    if (theta < 0.0) theta += 360.0;
    // atan2(-0, negative) rounds to exactly 360 after the wrap; fold it back.
    if (theta >= 360.0) theta -= 360.0;
    out.theta = theta;
    return out;
}

} // namespace retcc
