#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "charter/analysis/axis.hpp"
#include "charter/analysis/bars.hpp"
#include "charter/analysis/chart_table.hpp"
#include "charter/analysis/config.hpp"
#include "charter/analysis/lines.hpp"
#include "charter/analysis/pies.hpp"
#include "charter/core/error.hpp"
#include "charter/core/raster.hpp"
#include "charter/oracle/detector.hpp"
#include "charter/oracle/ocr.hpp"
#include "json.hpp"

namespace charter {

/// Why a chart produced no table.
struct AnalysisFailure {
  ErrorCode code = ErrorCode::no_chart;
  std::string message;
};

using AnalysisResult = std::variant<ChartTable, AnalysisFailure>;

/// Intermediate geometry, kept for overlays and diagnostics. Axis support
/// tokens index the OCR passed to analyze.
struct AnalysisDetails {
  std::optional<ChartType> type;
  std::optional<AxisModel> x_axis;
  std::optional<AxisModel> y_axis;
  std::vector<BarElement> bars;
  std::optional<PieGeometry> pie;
  std::vector<SeriesElement> series;
};

/// Recovers the data table of one chart. Never throws on bad detector or OCR
/// content: every error ends up in the returned failure.
AnalysisResult analyze(const DetectorOutput& det, const OcrOutput& ocr, const Raster& raster,
                       const AnalysisConfig& config = {}, AnalysisDetails* details = nullptr);

nlohmann::ordered_json to_json(const AnalysisFailure& failure);

}  // namespace charter
