#pragma once

#include <filesystem>
#include <variant>

#include "retcc/image.hpp"

namespace retcc {

/// Binary PPM (P6, maxval 255 or 65535). 16-bit samples are scaled to [0,255].
EncodedImage read_ppm(const std::filesystem::path& path);

/// PFM, 'PF' (color) or 'Pf' (grayscale, replicated to three channels).
/// Rows are stored bottom-to-top; a negative scale means little-endian.
LinearImage read_pfm(const std::filesystem::path& path);

/// Dispatch on the magic bytes: P6 -> EncodedImage, PF/Pf -> LinearImage.
std::variant<LinearImage, EncodedImage> read_image(const std::filesystem::path& path);

/// P6 with maxval 255; samples are rounded to the nearest integer level.
void write_ppm(const EncodedImage& img, const std::filesystem::path& path);

/// Little-endian color PFM (scale -1.0), 32-bit float samples.
void write_pfm(const LinearImage& img, const std::filesystem::path& path);

} // namespace retcc
