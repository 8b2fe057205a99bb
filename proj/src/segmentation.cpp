#include "ccseg/segmentation.hpp"

#include <string>

#include "ccseg/errors.hpp"

namespace ccseg {

LabelImage label_pixels(const Image& image, const QuantizedHistogram& q, const Assignment& a) {
  if (image.empty()) {
    throw InvalidInputError("cannot label an empty image");
  }
  if (a.labels.size() != q.points.size()) {
    throw InvalidInputError("assignment has " + std::to_string(a.labels.size()) +
                            " labels for " + std::to_string(q.points.size()) +
                            " quantized points");
  }

  LabelImage out;
  out.width = image.width();
  out.height = image.height();
  out.k = a.k;
  out.labels.resize(image.pixel_count());

  std::size_t i = 0;
  for (const Rgb8& pixel : image.pixels()) {
    const auto it = q.index_of.find(subcube_of(pixel, q.side));
    if (it == q.index_of.end()) {
      throw InternalError("pixel maps to a subcube missing from the quantized histogram; "
                          "the histogram was not built from this image");
    }
    out.labels[i++] = a.labels[it->second];
  }
  return out;
}

SegmentationOutput render_and_mask(const Image& source, const LabelImage& l,
                                   const ClusterModel& m) {
  if (source.width() != l.width || source.height() != l.height) {
    throw InvalidInputError("label image dimensions do not match the source image");
  }
  if (m.centroids.size() != l.k) {
    throw InvalidInputError("cluster model has " + std::to_string(m.centroids.size()) +
                            " clusters, label image expects " + std::to_string(l.k));
  }

  constexpr Rgb8 kMaskSet{0, 0, 0};        // cluster pixels are drawn black
  constexpr Rgb8 kMaskClear{255, 255, 255};

  SegmentationOutput out;
  out.label_image = l;
  out.rendered = Image(l.width, l.height);
  out.masks.assign(l.k, Image(l.width, l.height, kMaskClear));
  out.stats.assign(l.k, ClusterStats{});

  std::vector<Rgbd> colour_sums(l.k);
  std::vector<Rgb8> rendered_colour(l.k);
  std::vector<bool> present(l.k, false);
  for (std::uint32_t i = 0; i < l.k; ++i) {
    if (m.centroids[i]) {
      rendered_colour[i] = to_rgb8_rounded(*m.centroids[i]);
      present[i] = true;
    }
  }

  for (int y = 0; y < l.height; ++y) {
    for (int x = 0; x < l.width; ++x) {
      const std::uint32_t label = l.at(x, y);
      if (!present[label]) {
        throw InternalError("cluster " + std::to_string(label) +
                            " owns pixels but has no centroid");
      }
      out.rendered.at(x, y) = rendered_colour[label];
      out.masks[label].at(x, y) = kMaskSet;
      ++out.stats[label].pixel_count;
      colour_sums[label] += to_rgbd(source.at(x, y));
    }
  }

  for (std::uint32_t i = 0; i < l.k; ++i) {
    if (out.stats[i].pixel_count > 0) {
      out.stats[i].mean_colour =
          colour_sums[i] / static_cast<double>(out.stats[i].pixel_count);
    }
  }
  return out;
}

}  // namespace ccseg
