#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "charter/analysis/config.hpp"
#include "charter/core/heatmap.hpp"
#include "charter/oracle/ocr.hpp"
#include "charter/synth/ground_truth.hpp"

namespace charter {

struct AxisSupport {
  /// Tick position along the axis direction.
  double pixel = 0.0;
  double value = 0.0;
  /// OCR token the value was read from.
  std::size_t token = 0;
};

/// value = slope * pixel + intercept, fitted to tick labels.
struct AxisModel {
  Orientation orientation = Orientation::y;
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<AxisSupport> support;
  std::optional<std::string> title;

  double value_at(double pixel) const { return slope * pixel + intercept; }
  double pixel_at(double value) const { return (value - intercept) / slope; }
  /// Value range covered by the support points.
  double value_span() const;
};

/// Fits the axis whose tick labels share a near edge: the right edge for a
/// y axis, the top edge for an x axis. Tick peaks in `ticks` (heatmap
/// coordinates, `scale` raster pixels per cell) replace label centers when
/// snapping is enabled. None when no bin holds three consistent readings.
std::optional<AxisModel> recover_axis(const OcrOutput& ocr, Orientation orientation, const Heatmap* ticks = nullptr,
                                      const AnalysisConfig& config = {}, double scale = 4.0);

}  // namespace charter
