#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>

namespace ccseg {

/// One 8-bit-per-channel RGB pixel. Ordering is lexicographic (r, g, b).
struct Rgb8 {
  std::uint8_t r = 0, g = 0, b = 0;

  friend auto operator<=>(const Rgb8&, const Rgb8&) = default;
};

/// Real-valued point in RGB space. Used for subcube centres and cluster
/// centroids; channels stay in [0, 256) for anything derived from pixels.
struct Rgbd {
  double r = 0.0, g = 0.0, b = 0.0;

  Rgbd& operator+=(const Rgbd& o) {
    r += o.r;
    g += o.g;
    b += o.b;
    return *this;
  }

  friend Rgbd operator+(Rgbd a, const Rgbd& b) { return a += b; }
  friend Rgbd operator-(const Rgbd& a, const Rgbd& b) { return {a.r - b.r, a.g - b.g, a.b - b.b}; }
  friend Rgbd operator*(const Rgbd& a, double s) { return {a.r * s, a.g * s, a.b * s}; }
  friend Rgbd operator/(const Rgbd& a, double s) { return {a.r / s, a.g / s, a.b / s}; }
  friend bool operator==(const Rgbd&, const Rgbd&) = default;
};

inline double squared_norm(const Rgbd& a) { return a.r * a.r + a.g * a.g + a.b * a.b; }

inline double squared_distance(const Rgbd& a, const Rgbd& b) {
  const double dr = a.r - b.r;
  const double dg = a.g - b.g;
  const double db = a.b - b.b;
  return dr * dr + dg * dg + db * db;
}

inline Rgbd to_rgbd(Rgb8 c) {
  return {static_cast<double>(c.r), static_cast<double>(c.g), static_cast<double>(c.b)};
}

/// Round half up per channel, clamped to the representable range.
inline Rgb8 to_rgb8_rounded(const Rgbd& c) {
  const auto channel = [](double v) {
    return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
  };
  return {channel(c.r), channel(c.g), channel(c.b)};
}

}  // namespace ccseg
