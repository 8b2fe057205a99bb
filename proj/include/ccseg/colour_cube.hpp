#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "ccseg/colour.hpp"
#include "ccseg/image.hpp"

namespace ccseg {

/// Exact per-colour frequency table of an image.
struct ColourHistogram {
  std::map<Rgb8, std::uint64_t> entries;
  std::uint64_t source_pixel_count = 0;
};

/// Coordinates of one subcube in the uniform tiling of the colour cube.
/// Each coordinate lies in [0, 256/side).
struct SubcubeIndex {
  int ir = 0, ig = 0, ib = 0;

  friend auto operator<=>(const SubcubeIndex&, const SubcubeIndex&) = default;
};

/// Frequency-weighted representative of one occupied subcube: the subcube's
/// centre coordinate and the total pixel count agglomerated into it.
struct ColourPoint {
  Rgbd coord;
  std::uint64_t freq = 1;
};

/// The clustering instance built from an image: one weighted point per
/// occupied subcube, ordered lexicographically by subcube index so that
/// chromosome bit positions keep a stable meaning across runs.
struct QuantizedHistogram {
  int side = 32;
  std::vector<ColourPoint> points;
  std::map<SubcubeIndex, std::size_t> index_of;

  std::uint64_t total_frequency() const;
};

/// True for powers of two from 1 to 256, the sides that tile 0..255 exactly.
bool valid_cube_side(int side);

/// Count every distinct colour of the image. Alpha never reaches this layer;
/// the image loader strips it and promotes greyscale to RGB.
ColourHistogram build_histogram(const Image& image);

/// Subcube containing a colour: floor(channel / side) per channel.
SubcubeIndex subcube_of(Rgb8 colour, int side);

/// Centre of a subcube, taken as the midpoint of the discrete intensity range
/// it covers: index*side + (side-1)/2 per channel (15.5 for {0..31}).
Rgbd center_of(SubcubeIndex index, int side);

/// Agglomerate a histogram into one weighted point per occupied subcube.
/// Total frequency is conserved.
QuantizedHistogram quantize(const ColourHistogram& histogram, int side);

}  // namespace ccseg
