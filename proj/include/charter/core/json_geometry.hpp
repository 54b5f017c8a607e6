#pragma once

#include "charter/core/geometry.hpp"
#include "json.hpp"

namespace charter {

/// [x, y] or [x, y, intensity] when the intensity is nonzero.
nlohmann::ordered_json point_json(const Point& p);
Point point_from_json(const nlohmann::json& j);

/// [r, g, b]
nlohmann::ordered_json color_json(Color c);
Color color_from_json(const nlohmann::json& j);

/// {x_min, y_min, x_max, y_max, category, score}
nlohmann::ordered_json bbox_json(const BBox& b);
BBox bbox_from_json(const nlohmann::json& j);

}  // namespace charter
