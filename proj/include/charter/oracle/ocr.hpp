#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "charter/oracle/noise.hpp"
#include "charter/synth/ground_truth.hpp"

namespace charter {

/// A recognized text region. Rotated text arrives de-rotated: `text` reads
/// left to right and `angle` records the rotation of `polygon`.
struct OcrToken {
  Quad polygon{};
  double angle = 0.0;
  std::string text;
  /// Noticeably shorter than the page's typical token.
  bool superscript_candidate = false;

  BBox bounds() const { return quad_bounds(polygon); }
};

struct OcrOutput {
  std::vector<OcrToken> tokens;
};

/// One token per ground-truth text box; exponent ticks yield the mantissa
/// and the raised exponent as separate tokens. Characters are substituted by
/// a different alphanumeric at the configured rate and whole tokens dropped.
OcrOutput simulate_ocr(const GroundTruth& gt, const NoiseConfig& noise, std::uint64_t seed);

/// Sets superscript_candidate on tokens shorter than 0.8x the median height.
void mark_superscript_candidates(OcrOutput& ocr);

}  // namespace charter
