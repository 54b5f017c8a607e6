#include <cmath>
#include <filesystem>

#include "charter/core/error.hpp"
#include "charter/oracle/detector.hpp"
#include "charter/oracle/noise.hpp"
#include "charter/oracle/numeric.hpp"
#include "charter/oracle/ocr.hpp"
#include "charter/oracle/serialize.hpp"
#include "charter/synth/heatmaps.hpp"
#include "charter/synth/sampler.hpp"
#include "doctest.h"

using namespace charter;

namespace {

GroundTruth grid_of_bars(int n) {
  GroundTruth gt;
  gt.chart_region = {0, 0, 512, 512, BoxCategory::bar_chart};
  for (int i = 0; i < n; ++i) {
    const double x = 5.0 * (i % 90), y = 5.0 * (i / 90);
    gt.bars.push_back({{x, y, x + 60, y + 60, BoxCategory::vbar}, {}, i});
  }
  return gt;
}

OcrToken token(std::string text, double x, double y, double w, double h) {
  return {{Point{x, y}, Point{x + w, y}, Point{x + w, y + h}, Point{x, y + h}}, 0.0, std::move(text), false};
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("clean noise reproduces the ground truth exactly") {
  for (ChartType t : kAllChartTypes) {
    const SampledChart s = sample_chart(11, t);
    const DetectorOutput det = simulate_detector(s.chart.gt, noise_preset("clean"), 5);
    const auto truth = ground_truth_boxes(s.chart.gt);
    REQUIRE(det.boxes.size() == truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
      CHECK(det.boxes[i].x_min == truth[i].x_min);
      CHECK(det.boxes[i].y_max == truth[i].y_max);
      CHECK(det.boxes[i].category == truth[i].category);
      CHECK(det.boxes[i].score == 1.0);
    }
    CHECK(det.heatmaps == emit_heatmaps(s.chart.gt));
    const OcrOutput ocr = simulate_ocr(s.chart.gt, noise_preset("clean"), 5);
    std::size_t expected = 0;
    for (const TextBox& tb : s.chart.gt.texts) expected += tb.exponent ? 2 : 1;
    CHECK(ocr.tokens.size() == expected);
  }
}

TEST_CASE("box jitter has the configured spread") {
  NoiseConfig n;
  n.box_jitter = 2.0;
  const GroundTruth gt = grid_of_bars(2500);
  double total = 0.0;
  int count = 0;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const DetectorOutput det = simulate_detector(gt, n, seed);
    for (const BBox& b : det.boxes) {
      if (b.category != BoxCategory::vbar) continue;
      // Boxes stay in input order, so index recovers the source.
      const BBox& src = gt.bars[std::size_t(count % 2500)].box;
      total += std::fabs(b.x_min - src.x_min);
      ++count;
    }
  }
  REQUIRE(count == 10000);
  const double expected = 2.0 * std::sqrt(2.0 / kPi);
  CHECK(std::fabs(total / count - expected) <= 0.05 * expected);
}

TEST_CASE("false positives and negatives follow their rates") {
  NoiseConfig n;
  n.false_positive_rate = 0.2;
  n.false_negative_rate = 0.1;
  const GroundTruth gt = grid_of_bars(5000);
  const DetectorOutput det = simulate_detector(gt, n, 9);
  int jitterless_hits = 0, spurious = 0;
  for (const BBox& b : det.boxes) {
    if (b.category != BoxCategory::vbar) continue;
    if (b.score == 1.0) ++jitterless_hits; else ++spurious;
  }
  CHECK(std::abs(jitterless_hits - 4500) <= 100);
  CHECK(std::abs(spurious - 1000) <= 100);

  const DetectorOutput again = simulate_detector(gt, n, 9);
  REQUIRE(again.boxes.size() == det.boxes.size());
  for (std::size_t i = 0; i < det.boxes.size(); ++i) {
    CHECK(again.boxes[i].x_min == det.boxes[i].x_min);
    CHECK(again.boxes[i].score == det.boxes[i].score);
  }
}

TEST_CASE("ocr substitution rate") {
  GroundTruth gt;
  for (int i = 0; i < 1000; ++i) {
    TextBox t;
    t.text = "abcdefghij";
    t.polygon = {Point{0, 0}, Point{50, 0}, Point{50, 10}, Point{0, 10}};
    gt.texts.push_back(t);
  }
  NoiseConfig n;
  n.ocr_substitution_rate = 0.1;
  const OcrOutput ocr = simulate_ocr(gt, n, 3);
  REQUIRE(ocr.tokens.size() == 1000);
  int changed = 0;
  for (const OcrToken& t : ocr.tokens) {
    REQUIRE(t.text.size() == 10);
    for (std::size_t k = 0; k < 10; ++k) changed += t.text[k] != "abcdefghij"[k];
  }
  CHECK(std::abs(changed - 1000) <= 100);
}

TEST_CASE("exponent ticks arrive as mantissa and raised exponent") {
  SynthConfig c;
  c.p_exponent_ticks = 1.0;
  c.p_thousands_ticks = 0.0;
  c.p_currency_ticks = 0.0;
  c.p_hidden_axes = 0.0;
  const SampledChart s = sample_chart(4, ChartType::vbar, c);
  const OcrOutput ocr = simulate_ocr(s.chart.gt, noise_preset("clean"), 1);
  std::vector<double> powers;
  for (const NumericToken& n : numeric_tokens(ocr)) {
    if (n.power_of_ten) powers.push_back(n.value);
  }
  std::vector<double> ticks;
  for (const TickGeometry& t : s.chart.gt.ticks) {
    // Zero is drawn as a plain "0".
    if (t.value && *t.value != 0.0) ticks.push_back(*t.value);
  }
  REQUIRE(!ticks.empty());
  REQUIRE(powers.size() == ticks.size());
  std::sort(powers.begin(), powers.end());
  std::sort(ticks.begin(), ticks.end());
  for (std::size_t i = 0; i < ticks.size(); ++i) CHECK(powers[i] == doctest::Approx(ticks[i]));
}

TEST_CASE("parse_number") {
  CHECK(*parse_number("42.5") == 42.5);
  CHECK(*parse_number("-3") == -3.0);
  CHECK(*parse_number("1,250") == 1250.0);
  CHECK(*parse_number("$1,000.50") == 1000.5);
  CHECK(*parse_number("-$7") == -7.0);
  CHECK(*parse_number(".5") == 0.5);
  CHECK_FALSE(parse_number("abc"));
  CHECK_FALSE(parse_number("1,25"));
  CHECK_FALSE(parse_number("2019a"));
  CHECK_FALSE(parse_number(""));
}

TEST_CASE("parse_numeric_token reads raised exponents") {
  OcrOutput ocr;
  ocr.tokens.push_back(token("10", 100, 100, 16, 12));
  ocr.tokens.push_back(token("4", 117, 94, 6, 8));
  CHECK(*parse_numeric_token(ocr, 0) == 10000.0);
  CHECK_FALSE(parse_numeric_token(ocr, 1));
  CHECK_FALSE(parse_numeric_token(ocr, 7));

  // Baseline-aligned neighbors are separate numbers.
  OcrOutput flat;
  flat.tokens.push_back(token("10", 100, 100, 16, 12));
  flat.tokens.push_back(token("4", 118, 104, 6, 8));
  CHECK(*parse_numeric_token(flat, 0) == 10.0);
  CHECK(*parse_numeric_token(flat, 1) == 4.0);

  // A raised digit far from the mantissa is not its exponent.
  OcrOutput far;
  far.tokens.push_back(token("10", 100, 100, 16, 12));
  far.tokens.push_back(token("4", 140, 94, 6, 8));
  CHECK(*parse_numeric_token(far, 0) == 10.0);

  const auto n = numeric_tokens(ocr);
  REQUIRE(n.size() == 1);
  CHECK(n[0].power_of_ten);
  CHECK(n[0].bounds.y_min == 94.0);
  CHECK(n[0].bounds.x_max == 123.0);

  OcrOutput neg;
  neg.tokens.push_back(token("10", 100, 100, 16, 12));
  neg.tokens.push_back(token("-2", 117, 94, 9, 8));
  CHECK(*parse_numeric_token(neg, 0) == doctest::Approx(0.01));
}

TEST_CASE("superscript candidates") {
  OcrOutput ocr;
  ocr.tokens.push_back(token("a", 0, 0, 10, 12));
  ocr.tokens.push_back(token("b", 0, 0, 10, 12));
  ocr.tokens.push_back(token("c", 0, 0, 10, 8));
  mark_superscript_candidates(ocr);
  CHECK_FALSE(ocr.tokens[0].superscript_candidate);
  CHECK(ocr.tokens[2].superscript_candidate);
}

TEST_CASE("noise presets and validation") {
  CHECK(noise_preset_names() == std::vector<std::string>{"clean", "mild", "harsh"});
  for (const std::string& name : noise_preset_names()) {
    const auto path = std::filesystem::path(CHARTER_SOURCE_DIR) / "config" / "noise" / (name + ".json");
    CHECK(load_noise(path.string()) == noise_preset(name));
    CHECK(noise_config_from_json(to_json(noise_preset(name))) == noise_preset(name));
  }
  CHECK_THROWS_AS(noise_preset("brutal"), Error);
  NoiseConfig bad;
  bad.ocr_drop_rate = 1.5;
  CHECK_THROWS_AS(validate(bad), Error);
  bad = {};
  bad.box_jitter = -1;
  CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("detector and ocr documents round trip") {
  const SampledChart s = sample_chart(2, ChartType::pie);
  const DetectorOutput det = simulate_detector(s.chart.gt, noise_preset("mild"), 4);
  const auto dir = std::filesystem::temp_directory_path() / "charter_oracle_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  write_detector(dir / "c.det.json", det, "c.det.hm");
  const DetectorOutput back = read_detector(dir / "c.det.json");
  CHECK(back.boxes.size() == det.boxes.size());
  CHECK(to_json(back, "c.det.hm").dump() == to_json(det, "c.det.hm").dump());
  // Heatmaps are stored as 16-bit images.
  for (const auto& [cat, h] : det.heatmaps) {
    const Heatmap& b = back.heatmaps.at(cat);
    for (std::size_t i = 0; i < h.values().size(); ++i) CHECK(std::fabs(b.values()[i] - h.values()[i]) <= 0.5 / 65535 + 1e-7);
  }

  const OcrOutput ocr = simulate_ocr(s.chart.gt, noise_preset("mild"), 4);
  CHECK(to_json(ocr_from_json(to_json(ocr))).dump() == to_json(ocr).dump());

  std::filesystem::remove(dir / "c.det.hm" / "pie_center.png");
  try {
    read_detector(dir / "c.det.json");
    FAIL("expected an io error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
  CHECK_THROWS_AS(ocr_from_json(nlohmann::json::parse(R"({"tokens": [{"text": 3}]})")), Error);
  std::filesystem::remove_all(dir);
}

}
