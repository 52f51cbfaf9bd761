#pragma once

namespace retcc {

/// Hue in degrees [0,360); saturation and value both on [0,255].
struct HsvColor {
    double h = 0.0;
    double s = 0.0;
    double v = 0.0;
};

/// Double-opponent plane coordinates: signed red-green and yellow-blue axes
/// plus their polar form (r tracks saturation, theta tracks hue).
struct DoColor {
    double o_rg = 0.0;
    double o_yb = 0.0;
    double r = 0.0;
    double theta = 0.0; // degrees in [0,360); defined as 0 when r == 0
};

/// RGB in [0,255] to HSV. Achromatic input (r == g == b) yields h = 0, s = 0.
/// The hue sector is selected by which channel attains the maximum, testing
/// red, then green, then blue, so ties resolve in that order.
HsvColor rgb_to_hsv(double r, double g, double b);

/// Signed center/surround triple to the double-opponent plane:
///   o_rg = x_r - x_g,  o_yb = (x_r + x_g)/2 - x_b,
/// with r the Euclidean magnitude and theta the full-quadrant angle of
/// (o_rg, o_yb), wrapped into [0,360). The origin maps to r = 0, theta = 0;
/// such samples carry no hue information and statistics must skip them.
DoColor retinex_to_do(double x_r, double x_g, double x_b);

} // namespace retcc
