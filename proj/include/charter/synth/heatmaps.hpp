#pragma once

#include "charter/core/heatmap.hpp"
#include "charter/synth/ground_truth.hpp"

namespace charter {

inline constexpr int kHeatmapResolution = 128;
inline constexpr double kSplatSigma = 2.0;

/// Adds a Gaussian splat (peak 1 at `center`, heatmap coordinates).
void splat(Heatmap& h, const Point& center, double sigma = kSplatSigma);
/// Adds exp(-d^2 / 2 sigma^2) of the distance to the segment [a, b].
void stroke_segment(Heatmap& h, const Point& a, const Point& b, double sigma = kSplatSigma);
/// Adds exp(-d^2 / 2 sigma^2) of the distance to the circle.
void stroke_circle(Heatmap& h, const Point& center, double radius, double sigma = kSplatSigma);

/// One heatmap per category, all `resolution` x `resolution`; categories
/// absent from the chart are all zero. The raster side must be a multiple of
/// the resolution; raster pixel x maps to heatmap x / scale.
HeatmapSet emit_heatmaps(const GroundTruth& gt, int resolution = kHeatmapResolution);

}  // namespace charter
