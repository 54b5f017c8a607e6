#pragma once

#include "charter/core/raster.hpp"
#include "charter/synth/chart_spec.hpp"
#include "charter/synth/ground_truth.hpp"

namespace charter {

inline constexpr int kCanvasSize = 512;

struct RenderedChart {
  Raster raster;
  GroundTruth gt;
};

/// Draws the chart on a 512x512 canvas and records its exact geometry.
/// Throws Error(layout_overflow) when labels or elements do not fit, and
/// Error(invalid_argument) for malformed specs.
RenderedChart render(const ChartSpec& spec);

/// Throws Error(invalid_argument) when a chart spec breaks a structural invariant.
void validate(const ChartSpec& spec);

}  // namespace charter
