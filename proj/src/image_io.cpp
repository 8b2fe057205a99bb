#include "ccseg/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "ccseg/errors.hpp"

namespace ccseg {

namespace {

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string() + " for reading");
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoError("failed while reading " + path.string());
  }
  return bytes;
}

struct PngByteStream {
  const unsigned char* data;
  std::size_t size;
  std::size_t offset;
};

extern "C" void png_memory_read(png_structp png, png_bytep out, png_size_t count) {
  auto* stream = static_cast<PngByteStream*>(png_get_io_ptr(png));
  if (stream->offset + count > stream->size) {
    png_error(png, "unexpected end of PNG data");
  }
  std::memcpy(out, stream->data + stream->offset, count);
  stream->offset += count;
}

// Capture libpng's message instead of letting it print to stderr; the caller
// folds it into the IoError after the longjmp.
extern "C" void png_capture_error(png_structp png, png_const_charp message) {
  auto* out = static_cast<std::string*>(png_get_error_ptr(png));
  if (out != nullptr) {
    *out = message;
  }
  longjmp(png_jmpbuf(png), 1);
}

extern "C" void png_quiet_warning(png_structp, png_const_charp) {}

Image decode_png(const std::vector<unsigned char>& bytes, const std::filesystem::path& path) {
  std::string error_message;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error_message,
                                           png_capture_error, png_quiet_warning);
  if (!png) {
    throw IoError("png_create_read_struct failed");
  }
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("png_create_info_struct failed");
  }

  std::vector<png_bytep> row_pointers;
  Image image;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("cannot decode PNG " + path.string() + ": " +
                  (error_message.empty() ? "libpng failure" : error_message));
  }

  PngByteStream stream{bytes.data(), bytes.size(), 0};
  png_set_read_fn(png, &stream, png_memory_read);
  png_read_info(png, info);

  // Normalize every colour type to 8-bit RGB: expand palettes and sub-byte
  // greys, reduce 16-bit samples, replicate grey into three channels, and
  // drop any alpha channel.
  png_set_palette_to_rgb(png);
  png_set_expand_gray_1_2_4_to_8(png);
  png_set_scale_16(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) {
    png_set_tRNS_to_alpha(png);
  }
  png_set_gray_to_rgb(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  if (width == 0 || height == 0 || png_get_rowbytes(png, info) != width * 3) {
    png_error(png, "unexpected row layout after normalization");
  }

  image = Image(static_cast<int>(width), static_cast<int>(height));
  row_pointers.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) {
    row_pointers[y] = reinterpret_cast<png_bytep>(image.pixels().data() +
                                                  static_cast<std::size_t>(y) * width);
  }
  png_read_image(png, row_pointers.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return image;
}

// Binary PPM header token reader: skips whitespace and '#' comments.
std::uint64_t read_ppm_number(const std::vector<unsigned char>& bytes, std::size_t& offset,
                              const std::filesystem::path& path) {
  while (offset < bytes.size()) {
    const unsigned char c = bytes[offset];
    if (c == '#') {
      while (offset < bytes.size() && bytes[offset] != '\n') {
        ++offset;
      }
    } else if (std::isspace(c)) {
      ++offset;
    } else {
      break;
    }
  }
  if (offset >= bytes.size() || !std::isdigit(bytes[offset])) {
    throw IoError("malformed PPM header in " + path.string());
  }
  std::uint64_t value = 0;
  while (offset < bytes.size() && std::isdigit(bytes[offset])) {
    value = value * 10 + (bytes[offset] - '0');
    if (value > 1'000'000'000) {
      throw IoError("implausible PPM header value in " + path.string());
    }
    ++offset;
  }
  return value;
}

Image decode_ppm(const std::vector<unsigned char>& bytes, const std::filesystem::path& path) {
  std::size_t offset = 2;  // past "P6"
  const std::uint64_t width = read_ppm_number(bytes, offset, path);
  const std::uint64_t height = read_ppm_number(bytes, offset, path);
  const std::uint64_t maxval = read_ppm_number(bytes, offset, path);
  if (maxval != 255) {
    throw IoError("unsupported PPM maxval " + std::to_string(maxval) + " in " + path.string() +
                  " (only 255 is supported)");
  }
  if (width == 0 || height == 0) {
    throw IoError("PPM with zero dimension in " + path.string());
  }
  if (offset >= bytes.size() || !std::isspace(bytes[offset])) {
    throw IoError("malformed PPM header in " + path.string());
  }
  ++offset;  // single whitespace between header and raster

  const std::uint64_t expected = width * height * 3;
  if (bytes.size() - offset < expected) {
    throw IoError("truncated PPM raster in " + path.string());
  }
  Image image(static_cast<int>(width), static_cast<int>(height));
  std::memcpy(image.pixels().data(), bytes.data() + offset, expected);
  return image;
}

}  // namespace

Image load_image(const std::filesystem::path& path) {
  const std::vector<unsigned char> bytes = read_file(path);
  static const unsigned char png_magic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), png_magic, 8) == 0) {
    return decode_png(bytes, path);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') {
    return decode_ppm(bytes, path);
  }
  throw IoError(path.string() + " is neither a PNG nor a binary PPM (P6) file");
}

void save_png(const Image& image, const std::filesystem::path& path) {
  if (image.empty()) {
    throw InvalidInputError("cannot save an empty image");
  }
  std::FILE* file = std::fopen(path.string().c_str(), "wb");
  if (!file) {
    throw IoError("cannot open " + path.string() + " for writing");
  }

  std::string error_message;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error_message,
                                            png_capture_error, png_quiet_warning);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) {
      png_destroy_write_struct(&png, info ? &info : nullptr);
    }
    std::fclose(file);
    throw IoError("libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(file);
    throw IoError("cannot encode PNG " + path.string() + ": " +
                  (error_message.empty() ? "libpng failure" : error_message));
  }

  png_init_io(png, file);
  // Pinned encoder settings keep the output byte-stable for identical pixels.
  png_set_compression_level(png, 6);
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width()),
               static_cast<png_uint_32>(image.height()), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  std::vector<png_bytep> rows(image.height());
  const Rgb8* pixels = image.pixels().data();
  for (int y = 0; y < image.height(); ++y) {
    rows[y] = reinterpret_cast<png_bytep>(const_cast<Rgb8*>(pixels) +
                                          static_cast<std::size_t>(y) * image.width());
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fclose(file) != 0) {
    throw IoError("failed to finish writing " + path.string());
  }
}

void save_ppm(const Image& image, const std::filesystem::path& path) {
  if (image.empty()) {
    throw InvalidInputError("cannot save an empty image");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << "P6\n" << image.width() << " " << image.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels().data()),
            static_cast<std::streamsize>(image.pixel_count() * 3));
  if (!out) {
    throw IoError("failed while writing " + path.string());
  }
}

}  // namespace ccseg
