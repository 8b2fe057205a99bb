#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ccseg/clustering.hpp"
#include "ccseg/colour_cube.hpp"
#include "ccseg/image.hpp"

namespace ccseg {

/// Per-pixel cluster labels, same dimensions as the source image.
struct LabelImage {
  int width = 0;
  int height = 0;
  std::uint32_t k = 1;
  std::vector<std::uint32_t> labels;  // row-major

  std::uint32_t at(int x, int y) const {
    return labels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
  }
};

/// Pixel count and mean colour of one cluster, measured over the actual image
/// pixels rather than over the quantized points.
struct ClusterStats {
  std::uint64_t pixel_count = 0;
  std::optional<Rgbd> mean_colour;
};

struct SegmentationOutput {
  LabelImage label_image;
  /// Source image with every pixel replaced by its cluster centroid, rounded
  /// half up per channel.
  Image rendered;
  /// One black-on-white binary image per cluster (cluster pixels black).
  /// Masks are pairwise disjoint and together cover every pixel.
  std::vector<Image> masks;
  std::vector<ClusterStats> stats;
};

/// Label every pixel with its colour point's cluster: pixels are looked up
/// through the subcube they fall in. Requires the quantized histogram to have
/// been built from this image, so every pixel's subcube is occupied.
LabelImage label_pixels(const Image& image, const QuantizedHistogram& q, const Assignment& a);

/// Render the centroid-coloured image, the per-cluster masks and the
/// per-cluster pixel statistics.
SegmentationOutput render_and_mask(const Image& source, const LabelImage& l, const ClusterModel& m);

}  // namespace ccseg
