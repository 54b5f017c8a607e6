#pragma once

#include <optional>
#include <string>
#include <vector>

#include "charter/analysis/axis.hpp"
#include "charter/analysis/chart_table.hpp"
#include "charter/analysis/config.hpp"
#include "charter/core/raster.hpp"
#include "charter/oracle/detector.hpp"
#include "charter/oracle/ocr.hpp"

namespace charter {

struct BarElement {
  BBox box;
  Color color;
  double value = 0.0;
  std::string label;
  Provenance value_source = Provenance::axis_interpolated;
  Provenance label_source = Provenance::positional;
  double confidence = 1.0;
};

/// Bars of a vbar or hbar chart in reading order (left to right, top to
/// bottom). Proposals must be within the width tolerance of the median and
/// share the modal baseline. Values come from `value_axis` at the free edge,
/// else from a number written inside or beyond the bar. Labels come from the
/// category text under (vbar) or left of (hbar) each bar, else the legend,
/// else "bar_k". Throws Error(empty_table) when no proposal survives.
std::vector<BarElement> extract_bars(const DetectorOutput& det, ChartType type,
                                     const std::optional<AxisModel>& value_axis, const OcrOutput& ocr,
                                     const Raster& raster, const AnalysisConfig& config = {});

/// True for tokens that read like value labels of the given bar boxes:
/// numeric and sitting inside or just beyond the free edge.
bool is_value_label_of(const OcrToken& token, const std::vector<BBox>& bars, bool vertical);

}  // namespace charter
