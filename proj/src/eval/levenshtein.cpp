#include "charter/eval/levenshtein.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace charter {

std::size_t levenshtein_distance(std::string_view s, std::string_view t) {
  if (s.size() < t.size()) std::swap(s, t);
  // Single row over the shorter string.
  std::vector<std::size_t> row(t.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= s.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= t.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (s[i - 1] == t[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[t.size()];
}

std::string normalize_label(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += (c >= 'A' && c <= 'Z') ? char(c - 'A' + 'a') : c;
  }
  return out;
}

double levenshtein_ratio_raw(std::string_view s, std::string_view t) {
  const std::size_t total = s.size() + t.size();
  if (total == 0) return 1.0;
  return double(total - levenshtein_distance(s, t)) / double(total);
}

double levenshtein_ratio(std::string_view s, std::string_view t) {
  return levenshtein_ratio_raw(normalize_label(s), normalize_label(t));
}

}  // namespace charter
