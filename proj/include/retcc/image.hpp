#pragma once

#include <array>
#include <cassert>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace retcc {

inline constexpr int kChannels = 3; // channel order is R,G,B everywhere

/// Planar three-channel raster of double samples.
/// Plane c occupies [c*plane_size(), (c+1)*plane_size()), row-major.
class Image {
public:
    Image() = default;
    Image(int width, int height, double fill = 0.0)
        : width_(width), height_(height),
          data_(static_cast<std::size_t>(kChannels) * width * height, fill) {
        assert(width > 0 && height > 0);
    }

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return data_.empty(); }
    std::size_t plane_size() const {
        return static_cast<std::size_t>(width_) * height_;
    }

    double at(int x, int y, int c) const {
        assert(in_bounds(x, y) && c >= 0 && c < kChannels);
        return data_[c * plane_size() + static_cast<std::size_t>(y) * width_ + x];
    }
    double& at(int x, int y, int c) {
        assert(in_bounds(x, y) && c >= 0 && c < kChannels);
        return data_[c * plane_size() + static_cast<std::size_t>(y) * width_ + x];
    }

    std::span<const double> plane(int c) const {
        return {data_.data() + c * plane_size(), plane_size()};
    }
    std::span<double> plane(int c) {
        return {data_.data() + c * plane_size(), plane_size()};
    }

    std::vector<double>& samples() { return data_; }
    const std::vector<double>& samples() const { return data_; }

    bool same_shape(const Image& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }
    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Nonnegative finite radiance per pixel per channel (the HDR merged signal).
struct LinearImage : Image {
    using Image::Image;
    explicit LinearImage(Image img) : Image(std::move(img)) {}
};

/// Encoded light intensity, every sample in [0,255].
struct EncodedImage : Image {
    using Image::Image;
    explicit EncodedImage(Image img) : Image(std::move(img)) {}
};

/// Signed center/surround output, |sample| <= 255.
struct RetinexOutput : Image {
    using Image::Image;
    explicit RetinexOutput(Image img) : Image(std::move(img)) {}
};

/// Rectangular region of interest; must lie fully inside the image.
struct Roi {
    int x0 = 0;
    int y0 = 0;
    int w = 0;
    int h = 0;
};

bool roi_inside(const Roi& roi, const Image& img);

/// Arithmetic per-channel mean over the ROI pixels.
/// Throws std::invalid_argument if the ROI is not fully inside the image.
std::array<double, 3> roi_mean(const Image& img, const Roi& roi);

/// Mean with extended-precision accumulation.
double mean(std::span<const double> values);

} // namespace retcc
