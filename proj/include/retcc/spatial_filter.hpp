#pragma once

#include <vector>

#include "retcc/image.hpp"

namespace retcc {

/// Normalized sampled-Gaussian kernel truncated at `radius` taps.
struct GaussianSpec {
    double sigma = 0.0;
    int radius = 0;
    std::vector<double> weights; // size 2*radius+1, sums to 1

    /// Truncation at ceil(3*sigma) with renormalization.
    static GaussianSpec truncated(double sigma);
    /// Explicit radius, must be >= ceil(3*sigma).
    static GaussianSpec with_radius(double sigma, int radius);
};

/// Separable 2-D convolution with replicate-edge borders.
Image gaussian_filter(const Image& img, const GaussianSpec& spec);
EncodedImage gaussian_filter(const EncodedImage& img, const GaussianSpec& spec);

/// Fast approximation by hierarchical discrete correlation: a cascade of
/// small kernels applied at doubling sample spacings (binomial [1,4,6,4,1]/16
/// per octave plus one dilated Gaussian cap carrying the residual variance).
/// Falls back to direct filtering when the image is smaller than the deepest
/// level spacing or when sigma is small enough that the direct kernel is
/// already cheap. Max deviation from gaussian_filter stays well under 2.0
/// levels on [0,255] data.
Image hdc_gaussian(const Image& img, double sigma);

enum class FilterPath { Direct, Hdc };

/// Difference of Gaussians g(sigma1)*img - g(sigma2)*img; requires sigma1 < sigma2.
RetinexOutput dog(const Image& img, double sigma1, double sigma2,
                  FilterPath path = FilterPath::Direct);

} // namespace retcc
