#include "charter/oracle/ocr.hpp"

#include <algorithm>

#include "charter/synth/rng.hpp"

namespace charter {

namespace {

constexpr std::string_view kAlphanumerics = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";

std::string corrupt(Rng& rng, const std::string& s, double rate) {
  if (rate <= 0.0) return s;
  std::string out = s;
  for (char& ch : out) {
    if (!rng.bernoulli(rate)) continue;
    char repl = ch;
    while (repl == ch) repl = kAlphanumerics[static_cast<std::size_t>(rng.integer(0, int(kAlphanumerics.size()) - 1))];
    ch = repl;
  }
  return out;
}

}  // namespace

void mark_superscript_candidates(OcrOutput& ocr) {
  if (ocr.tokens.empty()) return;
  std::vector<double> heights;
  auto height = [](const OcrToken& t) {
    return distance(t.polygon[0], t.polygon[3]);
  };
  for (const OcrToken& t : ocr.tokens) heights.push_back(height(t));
  std::nth_element(heights.begin(), heights.begin() + heights.size() / 2, heights.end());
  const double median = heights[heights.size() / 2];
  for (OcrToken& t : ocr.tokens) t.superscript_candidate = height(t) <= 0.8 * median;
}

OcrOutput simulate_ocr(const GroundTruth& gt, const NoiseConfig& noise, std::uint64_t seed) {
  validate(noise);
  Rng rng(mix_seed(seed, 0x0c7));
  OcrOutput out;
  for (const TextBox& t : gt.texts) {
    const bool drop = noise.ocr_drop_rate > 0.0 && rng.bernoulli(noise.ocr_drop_rate);
    const std::string text = corrupt(rng, t.text, noise.ocr_substitution_rate);
    if (!drop) out.tokens.push_back({t.polygon, t.angle, text, false});
    if (t.exponent && t.exponent_polygon) {
      const bool drop_exp = noise.ocr_drop_rate > 0.0 && rng.bernoulli(noise.ocr_drop_rate);
      const std::string exp = corrupt(rng, *t.exponent, noise.ocr_substitution_rate);
      if (!drop_exp) out.tokens.push_back({*t.exponent_polygon, 0.0, exp, false});
    }
  }
  mark_superscript_candidates(out);
  return out;
}

}  // namespace charter
