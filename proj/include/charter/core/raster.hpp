#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "charter/core/geometry.hpp"

namespace charter {

/// Row-major 8-bit RGB image.
class Raster {
 public:
  Raster(int width, int height, Color fill = {255, 255, 255});
  Raster(int width, int height, std::vector<std::uint8_t> rgb);

  int width() const { return width_; }
  int height() const { return height_; }
  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  Color at(int x, int y) const {
    const std::uint8_t* p = &pixels_[(std::size_t(y) * width_ + x) * 3];
    return {p[0], p[1], p[2]};
  }
  void set(int x, int y, Color c) {
    std::uint8_t* p = &pixels_[(std::size_t(y) * width_ + x) * 3];
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
  }

  std::span<const std::uint8_t> bytes() const { return pixels_; }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

/// Binary grid; nonzero cells are foreground.
struct Mask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> cells;

  Mask() = default;
  Mask(int w, int h) : width(w), height(h), cells(std::size_t(w) * h, 0) {}

  bool at(int x, int y) const { return cells[std::size_t(y) * width + x] != 0; }
  void set(int x, int y, bool on = true) { cells[std::size_t(y) * width + x] = on ? 1 : 0; }
  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
  std::size_t count() const;

  friend bool operator==(const Mask&, const Mask&) = default;
};

}  // namespace charter
