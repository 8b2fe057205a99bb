#pragma once

#include <filesystem>

#include "ccseg/image.hpp"

namespace ccseg {

/// Load a PNG or binary PPM (P6) image, detected by file magic. Everything is
/// normalized to 8-bit RGB: palettes are expanded, greyscale is promoted by
/// channel replication, alpha is stripped, 16-bit PNG samples are reduced to
/// 8. Throws IoError for unreadable or undecodable files.
Image load_image(const std::filesystem::path& path);

/// Write an 8-bit RGB PNG. Fixed encoder settings, so identical pixels give
/// identical bytes.
void save_png(const Image& image, const std::filesystem::path& path);

/// Write a binary PPM (P6) with maxval 255.
void save_ppm(const Image& image, const std::filesystem::path& path);

}  // namespace ccseg
