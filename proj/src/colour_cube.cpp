#include "ccseg/colour_cube.hpp"

#include <bit>

#include "ccseg/errors.hpp"

namespace ccseg {

std::uint64_t QuantizedHistogram::total_frequency() const {
  std::uint64_t total = 0;
  for (const ColourPoint& p : points) {
    total += p.freq;
  }
  return total;
}

bool valid_cube_side(int side) {
  return side >= 1 && side <= 256 && std::has_single_bit(static_cast<unsigned>(side));
}

namespace {

void require_valid_side(int side) {
  if (!valid_cube_side(side)) {
    throw ConfigError("cube side must be a power of two in [1, 256], got " +
                      std::to_string(side));
  }
}

}  // namespace

ColourHistogram build_histogram(const Image& image) {
  if (image.empty()) {
    throw InvalidInputError("cannot build a colour histogram of an empty image");
  }
  ColourHistogram h;
  for (const Rgb8& pixel : image.pixels()) {
    ++h.entries[pixel];
  }
  h.source_pixel_count = image.pixel_count();
  return h;
}

SubcubeIndex subcube_of(Rgb8 colour, int side) {
  require_valid_side(side);
  return {colour.r / side, colour.g / side, colour.b / side};
}

Rgbd center_of(SubcubeIndex index, int side) {
  require_valid_side(side);
  const int count = 256 / side;
  if (index.ir < 0 || index.ig < 0 || index.ib < 0 || index.ir >= count || index.ig >= count ||
      index.ib >= count) {
    throw InvalidInputError("subcube index out of range for side " + std::to_string(side));
  }
  const double half = (side - 1) / 2.0;
  return {index.ir * side + half, index.ig * side + half, index.ib * side + half};
}

QuantizedHistogram quantize(const ColourHistogram& histogram, int side) {
  require_valid_side(side);
  if (histogram.entries.empty()) {
    throw InvalidInputError("cannot quantize an empty histogram");
  }

  // std::map keeps subcubes in lexicographic index order, which fixes the
  // point order and therefore the meaning of every chromosome bit position.
  std::map<SubcubeIndex, std::uint64_t> buckets;
  for (const auto& [colour, count] : histogram.entries) {
    buckets[subcube_of(colour, side)] += count;
  }

  QuantizedHistogram q;
  q.side = side;
  q.points.reserve(buckets.size());
  for (const auto& [index, freq] : buckets) {
    q.index_of.emplace(index, q.points.size());
    q.points.push_back(ColourPoint{center_of(index, side), freq});
  }
  return q;
}

}  // namespace ccseg
