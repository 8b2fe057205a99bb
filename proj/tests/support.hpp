#pragma once

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccseg/colour_cube.hpp"
#include "ccseg/image.hpp"
#include "ccseg/rng.hpp"

namespace ccseg_test {

// |a - b| <= tol * max(|a|, |b|, 1); the 1 keeps the bound meaningful near 0.
inline bool close_rel(double a, double b, double tol) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
  return std::fabs(a - b) <= tol * scale;
}

// a <= b up to the same relative slack.
inline bool leq_rel(double a, double b, double tol) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
  return a <= b + tol * scale;
}

// Scratch directory, unique per instance, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("ccseg_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::vector<ccseg::ColourPoint> random_points(ccseg::Rng& rng, std::size_t n,
                                                     std::uint64_t max_freq = 10) {
  std::vector<ccseg::ColourPoint> points(n);
  for (ccseg::ColourPoint& p : points) {
    p.coord = {static_cast<double>(rng.next_below(256)), static_cast<double>(rng.next_below(256)),
               static_cast<double>(rng.next_below(256))};
    p.freq = 1 + rng.next_below(max_freq);
  }
  return points;
}

inline ccseg::Image random_image(ccseg::Rng& rng, int width, int height) {
  ccseg::Image image(width, height);
  for (ccseg::Rgb8& pixel : image.pixels()) {
    pixel = {static_cast<std::uint8_t>(rng.next_below(256)),
             static_cast<std::uint8_t>(rng.next_below(256)),
             static_cast<std::uint8_t>(rng.next_below(256))};
  }
  return image;
}

inline std::string read_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_binary(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << bytes;
}

// report.txt minus its wall-clock line, for byte-for-byte comparisons.
inline std::string without_duration_line(const std::string& report) {
  std::istringstream in(report);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("duration_seconds=", 0) != 0) {
      out << line << '\n';
    }
  }
  return out.str();
}

}  // namespace ccseg_test
