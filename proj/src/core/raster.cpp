#include "charter/core/raster.hpp"

#include <algorithm>

#include "charter/core/error.hpp"

namespace charter {

Raster::Raster(int width, int height, Color fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) throw Error(ErrorCode::invalid_argument, "raster dims must be >= 1");
  pixels_.resize(std::size_t(width) * height * 3);
  for (std::size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
  }
}

Raster::Raster(int width, int height, std::vector<std::uint8_t> rgb)
    : width_(width), height_(height), pixels_(std::move(rgb)) {
  if (width < 1 || height < 1) throw Error(ErrorCode::invalid_argument, "raster dims must be >= 1");
  if (pixels_.size() != std::size_t(width) * height * 3) {
    throw Error(ErrorCode::invalid_argument, "raster buffer length must be width*height*3");
  }
}

std::size_t Mask::count() const {
  return std::size_t(std::count_if(cells.begin(), cells.end(), [](std::uint8_t c) { return c != 0; }));
}

}  // namespace charter
