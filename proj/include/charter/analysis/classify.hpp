#pragma once

#include "charter/analysis/chart_table.hpp"
#include "charter/analysis/config.hpp"
#include "charter/oracle/detector.hpp"

namespace charter {

/// Chart type of the highest-scoring chart-region box; ties go to the type
/// with more heatmap mass in its own categories. Bar regions become vbar or
/// hbar by the majority of element proposals (vbar on a tie). Throws
/// Error(no_chart) when no region box reaches the threshold.
ChartType classify_chart(const DetectorOutput& det, const AnalysisConfig& config = {});

}  // namespace charter
