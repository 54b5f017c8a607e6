#include "charter/oracle/serialize.hpp"

#include <fstream>

#include "charter/core/error.hpp"
#include "charter/core/json_geometry.hpp"
#include "charter/core/png_io.hpp"

namespace charter {

namespace fs = std::filesystem;

nlohmann::json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, path.string() + ": " + e.what());
  }
}

void write_json_file(const fs::path& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::io, "write failed: " + path.string());
}

void write_heatmap_dir(const fs::path& dir, const HeatmapSet& heatmaps) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create " + dir.string());
  for (const auto& [cat, h] : heatmaps) write_heatmap(dir / (std::string(to_string(cat)) + ".png"), h);
}

HeatmapSet read_heatmap_dir(const fs::path& dir) {
  HeatmapSet set;
  for (HeatmapCategory c : kAllHeatmapCategories) {
    const fs::path p = dir / (std::string(to_string(c)) + ".png");
    if (!fs::exists(p)) throw Error(ErrorCode::io, "missing heatmap " + p.string());
    set.emplace(c, read_heatmap(p));
  }
  return set;
}

nlohmann::ordered_json to_json(const DetectorOutput& det, const std::string& heatmap_dir) {
  nlohmann::ordered_json j;
  j["schema_version"] = kDetectorSchemaVersion;
  j["width"] = det.width;
  j["height"] = det.height;
  auto boxes = nlohmann::ordered_json::array();
  for (const BBox& b : det.boxes) boxes.push_back(bbox_json(b));
  j["boxes"] = std::move(boxes);
  nlohmann::ordered_json maps = nlohmann::ordered_json::object();
  for (const auto& [cat, h] : det.heatmaps) {
    maps[std::string(to_string(cat))] = heatmap_dir + "/" + std::string(to_string(cat)) + ".png";
  }
  j["heatmaps"] = std::move(maps);
  return j;
}

void write_detector(const fs::path& json_path, const DetectorOutput& det, const std::string& heatmap_dir) {
  write_heatmap_dir(json_path.parent_path() / heatmap_dir, det.heatmaps);
  write_json_file(json_path, to_json(det, heatmap_dir));
}

DetectorOutput read_detector(const fs::path& json_path) {
  const nlohmann::json j = read_json_file(json_path);
  try {
    if (j.value("schema_version", 0) != kDetectorSchemaVersion) {
      throw Error(ErrorCode::parse, "unsupported detector schema_version");
    }
    DetectorOutput det;
    det.width = j.at("width").get<int>();
    det.height = j.at("height").get<int>();
    if (det.width < 1 || det.height < 1) throw Error(ErrorCode::parse, "bad detector dimensions");
    for (const auto& b : j.at("boxes")) det.boxes.push_back(bbox_from_json(b));
    for (const auto& [name, rel] : j.at("heatmaps").items()) {
      auto cat = heatmap_category_from_string(name);
      if (!cat) throw Error(ErrorCode::parse, "unknown heatmap category " + name);
      const fs::path p = json_path.parent_path() / rel.get<std::string>();
      if (!fs::exists(p)) throw Error(ErrorCode::io, "missing heatmap " + p.string());
      Heatmap h = read_heatmap(p);
      if (h.category() != *cat) throw Error(ErrorCode::parse, "heatmap category mismatch for " + name);
      det.heatmaps.emplace(*cat, std::move(h));
    }
    return det;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, json_path.string() + ": " + e.what());
  }
}

nlohmann::ordered_json to_json(const OcrOutput& ocr) {
  nlohmann::ordered_json j;
  j["schema_version"] = kOcrSchemaVersion;
  auto tokens = nlohmann::ordered_json::array();
  for (const OcrToken& t : ocr.tokens) {
    auto poly = nlohmann::ordered_json::array();
    for (const Point& p : t.polygon) poly.push_back(point_json(p));
    tokens.push_back({{"text", t.text},
                      {"angle", t.angle},
                      {"polygon", std::move(poly)},
                      {"superscript_candidate", t.superscript_candidate}});
  }
  j["tokens"] = std::move(tokens);
  return j;
}

OcrOutput ocr_from_json(const nlohmann::json& j) {
  try {
    if (j.value("schema_version", 0) != kOcrSchemaVersion) throw Error(ErrorCode::parse, "unsupported ocr schema_version");
    OcrOutput ocr;
    for (const auto& t : j.at("tokens")) {
      OcrToken tok;
      tok.text = t.at("text").get<std::string>();
      tok.angle = t.value("angle", 0.0);
      if (!(tok.angle > -90.0 && tok.angle <= 90.0)) throw Error(ErrorCode::parse, "token angle outside (-90, 90]");
      const auto& poly = t.at("polygon");
      if (poly.size() != 4) throw Error(ErrorCode::parse, "token polygon needs 4 points");
      for (std::size_t i = 0; i < 4; ++i) tok.polygon[i] = point_from_json(poly.at(i));
      const BBox b = tok.bounds();
      if (!(b.x_max > b.x_min && b.y_max > b.y_min)) throw Error(ErrorCode::parse, "degenerate token polygon");
      tok.superscript_candidate = t.value("superscript_candidate", false);
      ocr.tokens.push_back(std::move(tok));
    }
    return ocr;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("ocr: ") + e.what());
  }
}

}  // namespace charter
