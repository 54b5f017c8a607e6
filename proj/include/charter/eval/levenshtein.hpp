#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace charter {

/// Unit-cost edit distance over bytes.
std::size_t levenshtein_distance(std::string_view s, std::string_view t);

/// Trims, collapses whitespace runs to one space and lowercases ASCII.
std::string normalize_label(std::string_view s);

/// (|s| + |t| - distance) / (|s| + |t|) on normalized labels; 1 for two
/// empty labels.
double levenshtein_ratio(std::string_view s, std::string_view t);

/// Same ratio without normalization.
double levenshtein_ratio_raw(std::string_view s, std::string_view t);

}  // namespace charter
