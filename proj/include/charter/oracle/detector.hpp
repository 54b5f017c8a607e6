#pragma once

#include <cstdint>
#include <vector>

#include "charter/core/geometry.hpp"
#include "charter/core/heatmap.hpp"
#include "charter/oracle/noise.hpp"
#include "charter/synth/ground_truth.hpp"

namespace charter {

/// Stage-1 page boxes, Stage-2 element boxes and keypoint heatmaps.
struct DetectorOutput {
  int width = 512;
  int height = 512;
  std::vector<BBox> boxes;
  HeatmapSet heatmaps;
};

/// Boxes a perfect detector would report: element boxes (bars, sectors),
/// the chart region, plot area, legend, and text regions for title, caption
/// and axis titles.
std::vector<BBox> ground_truth_boxes(const GroundTruth& gt);

/// Emits the ground-truth heatmaps and corrupts everything per `noise`.
DetectorOutput simulate_detector(const GroundTruth& gt, const NoiseConfig& noise, std::uint64_t seed);
/// Same, starting from already emitted (e.g. loaded) heatmaps.
DetectorOutput simulate_detector(const GroundTruth& gt, HeatmapSet heatmaps, const NoiseConfig& noise,
                                 std::uint64_t seed);

}  // namespace charter
