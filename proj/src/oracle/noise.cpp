#include "charter/oracle/noise.hpp"

#include <fstream>

#include "charter/core/error.hpp"

namespace charter {

namespace {

struct Preset {
  const char* name;
  NoiseConfig config;
};

const Preset kPresets[] = {
    {"clean", {}},
    {"mild", {1.5, 0.05, 0.05, 0.03, 0.7, 0.05, 0.01, 0.01}},
    {"harsh", {4.0, 0.15, 0.2, 0.1, 1.5, 0.15, 0.05, 0.05}},
};

}  // namespace

void validate(const NoiseConfig& n) {
  for (double s : {n.box_jitter, n.score_sigma, n.heatmap_blur, n.heatmap_speckle}) {
    if (!(s >= 0.0)) throw Error(ErrorCode::invalid_config, "noise: sigmas must be non-negative");
  }
  for (double r : {n.false_positive_rate, n.false_negative_rate, n.ocr_substitution_rate, n.ocr_drop_rate,
                   n.heatmap_speckle}) {
    if (!(r >= 0.0 && r <= 1.0)) throw Error(ErrorCode::invalid_config, "noise: rates must lie in [0,1]");
  }
}

nlohmann::ordered_json to_json(const NoiseConfig& n) {
  return {{"box_jitter", n.box_jitter},
          {"score_sigma", n.score_sigma},
          {"false_positive_rate", n.false_positive_rate},
          {"false_negative_rate", n.false_negative_rate},
          {"heatmap_blur", n.heatmap_blur},
          {"heatmap_speckle", n.heatmap_speckle},
          {"ocr_substitution_rate", n.ocr_substitution_rate},
          {"ocr_drop_rate", n.ocr_drop_rate}};
}

NoiseConfig noise_config_from_json(const nlohmann::json& j) {
  NoiseConfig n;
  try {
    n.box_jitter = j.value("box_jitter", 0.0);
    n.score_sigma = j.value("score_sigma", 0.0);
    n.false_positive_rate = j.value("false_positive_rate", 0.0);
    n.false_negative_rate = j.value("false_negative_rate", 0.0);
    n.heatmap_blur = j.value("heatmap_blur", 0.0);
    n.heatmap_speckle = j.value("heatmap_speckle", 0.0);
    n.ocr_substitution_rate = j.value("ocr_substitution_rate", 0.0);
    n.ocr_drop_rate = j.value("ocr_drop_rate", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_config, std::string("noise: ") + e.what());
  }
  validate(n);
  return n;
}

std::vector<std::string> noise_preset_names() {
  std::vector<std::string> out;
  for (const Preset& p : kPresets) out.emplace_back(p.name);
  return out;
}

NoiseConfig noise_preset(std::string_view name) {
  for (const Preset& p : kPresets) {
    if (name == p.name) return p.config;
  }
  throw Error(ErrorCode::invalid_config, "unknown noise preset: " + std::string(name));
}

NoiseConfig load_noise(std::string_view name_or_path) {
  for (const Preset& p : kPresets) {
    if (name_or_path == p.name) return p.config;
  }
  std::ifstream in{std::filesystem::path(name_or_path)};
  if (!in) throw Error(ErrorCode::invalid_config, "noise: not a preset or readable file: " + std::string(name_or_path));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_config, std::string("noise: ") + e.what());
  }
  return noise_config_from_json(j);
}

}  // namespace charter
