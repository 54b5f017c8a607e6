#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace charter {

/// Corruption applied by the detector and OCR simulators.
struct NoiseConfig {
  /// Gaussian sigma added to every box coordinate, pixels.
  double box_jitter = 0.0;
  /// Sigma of the half-normal drop applied to box scores.
  double score_sigma = 0.0;
  /// Expected spurious element boxes per ground-truth element, per category.
  double false_positive_rate = 0.0;
  /// Probability that an element box is missed.
  double false_negative_rate = 0.0;
  /// Gaussian blur sigma applied to heatmaps, heatmap pixels.
  double heatmap_blur = 0.0;
  /// Half-width of the uniform additive heatmap noise; results are clipped to [0, 1].
  double heatmap_speckle = 0.0;
  /// Per-character substitution probability.
  double ocr_substitution_rate = 0.0;
  /// Per-token drop probability.
  double ocr_drop_rate = 0.0;

  friend bool operator==(const NoiseConfig&, const NoiseConfig&) = default;
};

/// Throws Error(invalid_config) for rates outside [0, 1] or negative sigmas.
void validate(const NoiseConfig& noise);

nlohmann::ordered_json to_json(const NoiseConfig& noise);
/// Missing keys default to zero.
NoiseConfig noise_config_from_json(const nlohmann::json& j);

/// Names of the built-in presets, mildest first.
std::vector<std::string> noise_preset_names();
/// Built-in preset by name; throws Error(invalid_config) for unknown names.
NoiseConfig noise_preset(std::string_view name);
/// A preset name or a path to a JSON file.
NoiseConfig load_noise(std::string_view name_or_path);

}  // namespace charter
