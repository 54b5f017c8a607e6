#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "charter/synth/chart_spec.hpp"
#include "charter/synth/render.hpp"

namespace charter {

/// Deterministic spec for (seed, type, config). Throws Error(invalid_config)
/// when the config fails validation.
ChartSpec sample_spec(std::uint64_t seed, ChartType type, const SynthConfig& config = {});

struct SampledChart {
  ChartSpec spec;
  RenderedChart chart;
  /// Number of rejected layouts before this one.
  int rejections = 0;
};

/// Samples and renders, redrawing from derived streams while the layout
/// overflows. The returned spec keeps `seed`.
SampledChart sample_chart(std::uint64_t seed, ChartType type, const SynthConfig& config = {});

/// Chart id used in dataset layouts: `<type>_<index:05d>`.
std::string chart_id(ChartType type, std::uint64_t index);

/// Named colors the sampler draws element colors from.
std::span<const Color> palette();

}  // namespace charter
