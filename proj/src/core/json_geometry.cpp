#include "charter/core/json_geometry.hpp"

#include "charter/core/error.hpp"

namespace charter {

nlohmann::ordered_json point_json(const Point& p) {
  if (p.intensity != 0.0) return {p.x, p.y, p.intensity};
  return {p.x, p.y};
}

Point point_from_json(const nlohmann::json& j) {
  Point p{j.at(0).get<double>(), j.at(1).get<double>()};
  if (j.size() > 2) p.intensity = j.at(2).get<double>();
  return p;
}

nlohmann::ordered_json color_json(Color c) { return {c.r, c.g, c.b}; }

Color color_from_json(const nlohmann::json& j) {
  return {j.at(0).get<std::uint8_t>(), j.at(1).get<std::uint8_t>(), j.at(2).get<std::uint8_t>()};
}

nlohmann::ordered_json bbox_json(const BBox& b) {
  return {{"x_min", b.x_min},
          {"y_min", b.y_min},
          {"x_max", b.x_max},
          {"y_max", b.y_max},
          {"category", std::string(to_string(b.category))},
          {"score", b.score}};
}

BBox bbox_from_json(const nlohmann::json& j) {
  auto cat = box_category_from_string(j.at("category").get<std::string>());
  if (!cat) throw Error(ErrorCode::parse, "unknown box category " + j.at("category").get<std::string>());
  BBox b{j.at("x_min").get<double>(), j.at("y_min").get<double>(), j.at("x_max").get<double>(),
         j.at("y_max").get<double>(),  *cat,                         j.value("score", 1.0)};
  if (!b.valid()) throw Error(ErrorCode::parse, "degenerate box");
  return b;
}

}  // namespace charter
