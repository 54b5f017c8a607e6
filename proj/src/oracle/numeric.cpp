#include "charter/oracle/numeric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <regex>
#include <string>

namespace charter {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool strip_currency(std::string_view& s) {
  for (std::string_view sym : {"$", "\xE2\x82\xAC", "\xC2\xA3", "\xC2\xA5"}) {
    if (s.starts_with(sym)) {
      s.remove_prefix(sym.size());
      return true;
    }
  }
  return false;
}

bool strip_sign(std::string_view& s, bool& negative) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
    return true;
  }
  return false;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::optional<int> parse_exponent(std::string_view s) {
  s = trim(s);
  bool negative = false;
  strip_sign(s, negative);
  if (!all_digits(s) || s.size() > 3) return std::nullopt;
  int v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return negative ? -v : v;
}

}  // namespace

std::optional<double> parse_number(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  strip_sign(s, negative);
  if (strip_currency(s) && !negative) strip_sign(s, negative);
  static const std::regex kNumber(R"(^(\d{1,3}(,\d{3})+|\d+)(\.\d+)?$|^\.\d+$)");
  const std::string body(s);
  if (!std::regex_match(body, kNumber)) return std::nullopt;
  std::string digits;
  for (char c : body) {
    if (c != ',') digits += c;
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
  return negative ? -v : v;
}

bool is_exponent_of(const OcrToken& mantissa, const OcrToken& exponent) {
  if (trim(mantissa.text) != "10" || !parse_exponent(exponent.text)) return false;
  if (mantissa.angle != 0.0 || exponent.angle != 0.0) return false;
  const BBox m = mantissa.bounds(), e = exponent.bounds();
  const double hm = m.height(), he = e.height();
  if (hm <= 0.0) return false;
  const double gap = e.x_min - m.x_max;
  return e.y_min < (m.y_min + m.y_max) / 2.0 && he <= 0.8 * hm && gap >= -0.2 * hm && gap <= 0.6 * hm &&
         e.y_max > m.y_min - 0.5 * hm && e.y_max < m.y_max - 0.2 * hm;
}

namespace {

bool is_some_exponent(const OcrOutput& ocr, std::size_t index) {
  for (std::size_t j = 0; j < ocr.tokens.size(); ++j) {
    if (j != index && is_exponent_of(ocr.tokens[j], ocr.tokens[index])) return true;
  }
  return false;
}

// Nearest raised exponent right of mantissa `index`.
std::optional<std::size_t> find_exponent(const OcrOutput& ocr, std::size_t index) {
  const auto& tokens = ocr.tokens;
  std::optional<std::size_t> best;
  double best_gap = 0.0;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (k == index || !is_exponent_of(tokens[index], tokens[k])) continue;
    const double gap = tokens[k].bounds().x_min - tokens[index].bounds().x_max;
    if (!best || gap < best_gap) {
      best = k;
      best_gap = gap;
    }
  }
  return best;
}

}  // namespace

std::optional<double> parse_numeric_token(const OcrOutput& ocr, std::size_t index) {
  if (index >= ocr.tokens.size() || is_some_exponent(ocr, index)) return std::nullopt;
  if (const auto e = find_exponent(ocr, index)) return std::pow(10.0, *parse_exponent(ocr.tokens[*e].text));
  return parse_number(ocr.tokens[index].text);
}

std::vector<NumericToken> numeric_tokens(const OcrOutput& ocr) {
  std::vector<NumericToken> out;
  for (std::size_t i = 0; i < ocr.tokens.size(); ++i) {
    const auto v = parse_numeric_token(ocr, i);
    if (!v) continue;
    const OcrToken& t = ocr.tokens[i];
    NumericToken n{*v, t.bounds().center(), distance(t.polygon[0], t.polygon[3]), i, false, t.bounds()};
    if (const auto e = find_exponent(ocr, i)) {
      const BBox eb = ocr.tokens[*e].bounds();
      n.power_of_ten = true;
      n.bounds.x_min = std::min(n.bounds.x_min, eb.x_min);
      n.bounds.y_min = std::min(n.bounds.y_min, eb.y_min);
      n.bounds.x_max = std::max(n.bounds.x_max, eb.x_max);
      n.bounds.y_max = std::max(n.bounds.y_max, eb.y_max);
    }
    out.push_back(n);
  }
  return out;
}

}  // namespace charter
