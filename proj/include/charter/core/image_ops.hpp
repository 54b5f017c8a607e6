#pragma once

#include <vector>

#include "charter/core/geometry.hpp"
#include "charter/core/heatmap.hpp"
#include "charter/core/raster.hpp"

namespace charter {

/// Peaks of `h`: cells with value >= threshold that equal the maximum of their
/// (2*min_distance+1)^2 neighborhood. Returned by descending intensity (ties in
/// row-major order) after greedy suppression, so no two returned points are
/// closer than min_distance.
std::vector<Point> local_maxima(const Heatmap& h, float threshold = 0.3f, int min_distance = 4);

/// Sub-cell peak location from a per-axis parabola through the log values of
/// the peak and its 4-neighbors (exact for Gaussian blobs). Falls back to the
/// intensity-weighted centroid of the (2*radius+1)^2 window when a neighbor is
/// zero or the fit is not concave. Keeps the peak's intensity.
Point refine_peak(const Heatmap& h, const Point& peak, int radius = 1);

/// Windowed maximum over a clipped (2*radius+1)^2 square.
Heatmap max_filter(const Heatmap& h, int radius);

/// Separable Gaussian blur with zero padding; sigma <= 0 returns a copy.
Heatmap gaussian_blur(const Heatmap& h, double sigma);

struct PixelCoord {
  int x = 0;
  int y = 0;

  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

struct Component {
  std::vector<PixelCoord> pixels;
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;

  std::size_t area() const { return pixels.size(); }
};

/// 8-connected foreground components, in order of their first pixel in
/// row-major scan.
std::vector<Component> connected_components(const Mask& mask);

enum class MorphOp { dilate, erode, open, close };

/// Square structuring element of side 2*radius+1, window clipped at the
/// border (out-of-grid cells are ignored rather than padded).
Mask morphology(const Mask& mask, MorphOp op, int radius);

/// Foreground where h >= t.
Mask threshold(const Heatmap& h, float t);

}  // namespace charter
