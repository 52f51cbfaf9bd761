#include "retcc/image.hpp"

#include <stdexcept>

namespace retcc {

bool roi_inside(const Roi& roi, const Image& img) {
    return roi.w >= 1 && roi.h >= 1 && roi.x0 >= 0 && roi.y0 >= 0 &&
           roi.x0 + roi.w <= img.width() && roi.y0 + roi.h <= img.height();
}

std::array<double, 3> roi_mean(const Image& img, const Roi& roi) {
    if (!roi_inside(roi, img)) {
        throw std::invalid_argument("roi_mean: ROI outside image bounds");
    }
    std::array<double, 3> out{};
    const double n = static_cast<double>(roi.w) * roi.h;
    for (int c = 0; c < kChannels; ++c) {
        long double acc = 0.0L;
        for (int y = roi.y0; y < roi.y0 + roi.h; ++y) {
            for (int x = roi.x0; x < roi.x0 + roi.w; ++x) {
                acc += img.at(x, y, c);
            }
        }
        out[c] = static_cast<double>(acc / n);
    }
    return out;
}

double mean(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("mean: empty input");
    }
    long double acc = 0.0L;
    for (double v : values) {
        acc += v;
    }
    return static_cast<double>(acc / values.size());
}

} // namespace retcc
