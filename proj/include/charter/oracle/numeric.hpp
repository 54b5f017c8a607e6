#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "charter/oracle/ocr.hpp"

namespace charter {

/// Plain decimal with optional sign, leading currency symbol ($, €, £, ¥)
/// and comma thousands separators. None for anything else.
std::optional<double> parse_number(std::string_view text);

/// True when `exponent` sits as a superscript of the "10" mantissa: digits
/// only, top above the mantissa's vertical center, bottom clearly above its
/// baseline, height at most 0.8x the mantissa's, starting within 0.6x
/// mantissa height of its right edge.
bool is_exponent_of(const OcrToken& mantissa, const OcrToken& exponent);

/// Value of token `index`, reading "10" plus a raised digit token as a power
/// of ten. None when the token is not numeric or is itself an exponent.
std::optional<double> parse_numeric_token(const OcrOutput& ocr, std::size_t index);

struct NumericToken {
  double value = 0.0;
  /// Center of the token (of the mantissa for powers of ten).
  Point anchor;
  double height = 0.0;
  std::size_t index = 0;
  bool power_of_ten = false;
  /// Extent of the reading, exponent included.
  BBox bounds;
};

/// Every numeric reading on the page, exponents merged into their mantissa.
std::vector<NumericToken> numeric_tokens(const OcrOutput& ocr);

}  // namespace charter
