#pragma once

#include <filesystem>
#include <string>

#include "charter/oracle/detector.hpp"
#include "charter/oracle/ocr.hpp"
#include "json.hpp"

namespace charter {

inline constexpr int kDetectorSchemaVersion = 1;
inline constexpr int kOcrSchemaVersion = 1;

/// Heatmaps are referenced as `<heatmap_dir>/<category>.png`, relative to
/// the JSON file.
nlohmann::ordered_json to_json(const DetectorOutput& det, const std::string& heatmap_dir);
/// Writes the heatmaps and the JSON document.
void write_detector(const std::filesystem::path& json_path, const DetectorOutput& det, const std::string& heatmap_dir);
/// Loads a detector document and the heatmaps it references. Throws
/// Error(io) for missing files and Error(parse) for malformed content.
DetectorOutput read_detector(const std::filesystem::path& json_path);

nlohmann::ordered_json to_json(const OcrOutput& ocr);
OcrOutput ocr_from_json(const nlohmann::json& j);

/// Loads every `<category>.png` in a heatmap directory; all categories must
/// be present.
HeatmapSet read_heatmap_dir(const std::filesystem::path& dir);
void write_heatmap_dir(const std::filesystem::path& dir, const HeatmapSet& heatmaps);

nlohmann::json read_json_file(const std::filesystem::path& path);
/// Writes `j.dump(2)` plus a trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::ordered_json& j);

}  // namespace charter
