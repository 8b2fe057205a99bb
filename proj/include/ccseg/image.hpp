#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ccseg/colour.hpp"
#include "ccseg/errors.hpp"

namespace ccseg {

/// Row-major raster of RGB pixels.
class Image {
 public:
  Image() = default;

  Image(int width, int height, Rgb8 fill = {}) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
      throw InvalidInputError("image dimensions must be positive");
    }
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }
  std::uint64_t pixel_count() const { return pixels_.size(); }

  Rgb8& at(int x, int y) { return pixels_[index(x, y)]; }
  Rgb8 at(int x, int y) const { return pixels_[index(x, y)]; }

  std::span<Rgb8> pixels() { return pixels_; }
  std::span<const Rgb8> pixels() const { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Rgb8> pixels_;
};

}  // namespace ccseg
