#include "charter/synth/ground_truth.hpp"

#include <algorithm>

#include "charter/core/error.hpp"
#include "charter/core/json_geometry.hpp"

namespace charter {

namespace {

constexpr std::array<std::string_view, 10> kRoleNames = {
    "title", "caption", "x_title", "y_title", "x_tick", "y_tick", "category", "legend_entry", "pie_label",
    "value_label",
};

nlohmann::ordered_json quad_json(const Quad& q) {
  auto a = nlohmann::ordered_json::array();
  for (const Point& p : q) a.push_back(point_json(p));
  return a;
}

Quad quad_from(const nlohmann::json& j) {
  if (j.size() != 4) throw Error(ErrorCode::parse, "polygon needs 4 points");
  Quad q;
  for (std::size_t i = 0; i < 4; ++i) q[i] = point_from_json(j.at(i));
  return q;
}

nlohmann::ordered_json axis_json(const std::optional<AxisMapping>& a) {
  if (!a) return nullptr;
  return {{"orientation", std::string(to_string(a->orientation))}, {"slope", a->slope}, {"intercept", a->intercept}};
}

Orientation orientation_from(const nlohmann::json& j) {
  const auto s = j.get<std::string>();
  if (s == "x") return Orientation::x;
  if (s == "y") return Orientation::y;
  throw Error(ErrorCode::parse, "bad orientation " + s);
}

std::optional<AxisMapping> axis_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  const auto& a = j.at(key);
  return AxisMapping{orientation_from(a.at("orientation")), a.at("slope").get<double>(),
                     a.at("intercept").get<double>()};
}

std::optional<BBox> opt_box(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return bbox_from_json(j.at(key));
}

}  // namespace

std::string_view to_string(Orientation o) { return o == Orientation::x ? "x" : "y"; }

std::string_view to_string(TextRole role) { return kRoleNames[static_cast<std::size_t>(role)]; }

std::optional<TextRole> text_role_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kRoleNames.size(); ++i) {
    if (kRoleNames[i] == name) return static_cast<TextRole>(i);
  }
  return std::nullopt;
}

BBox quad_bounds(const Quad& q) {
  BBox b{q[0].x, q[0].y, q[0].x, q[0].y, BoxCategory::title, 1.0};
  for (const Point& p : q) {
    b.x_min = std::min(b.x_min, p.x);
    b.y_min = std::min(b.y_min, p.y);
    b.x_max = std::max(b.x_max, p.x);
    b.y_max = std::max(b.y_max, p.y);
  }
  return b;
}

nlohmann::ordered_json to_json(const GroundTruth& gt) {
  using J = nlohmann::ordered_json;
  J j;
  j["schema_version"] = kGroundTruthSchemaVersion;
  j["seed"] = gt.seed;
  j["width"] = gt.width;
  j["height"] = gt.height;
  j["background"] = color_json(gt.background);
  j["element_texture"] = gt.element_texture;
  j["table"] = to_json(gt.table);
  j["chart_region"] = bbox_json(gt.chart_region);
  j["plot_area"] = gt.plot_area ? bbox_json(*gt.plot_area) : J(nullptr);
  j["legend_box"] = gt.legend_box ? bbox_json(*gt.legend_box) : J(nullptr);
  j["x_axis"] = axis_json(gt.x_axis);
  j["y_axis"] = axis_json(gt.y_axis);

  J bars = J::array();
  for (const auto& b : gt.bars) bars.push_back({{"box", bbox_json(b.box)}, {"color", color_json(b.color)}, {"row", b.row}});
  j["bars"] = std::move(bars);

  if (gt.pie) {
    J sectors = J::array();
    for (const auto& s : gt.pie->sectors) {
      sectors.push_back({{"start_deg", s.start_deg},
                         {"span_deg", s.span_deg},
                         {"color", color_json(s.color)},
                         {"row", s.row},
                         {"box", bbox_json(s.box)}});
    }
    j["pie"] = {{"center", point_json(gt.pie->center)}, {"radius", gt.pie->radius}, {"sectors", std::move(sectors)}};
  } else {
    j["pie"] = nullptr;
  }

  J lines = J::array();
  for (const auto& l : gt.lines) {
    J verts = J::array();
    for (const Point& p : l.vertices) verts.push_back(point_json(p));
    lines.push_back({{"vertices", std::move(verts)},
                     {"color", color_json(l.color)},
                     {"dashed", l.dashed},
                     {"series", l.series}});
  }
  j["lines"] = std::move(lines);

  J dots = J::array();
  for (const auto& d : gt.dots) {
    dots.push_back({{"center", point_json(d.center)},
                    {"radius", d.radius},
                    {"color", color_json(d.color)},
                    {"series", d.series}});
  }
  j["dots"] = std::move(dots);

  J ticks = J::array();
  for (const auto& t : gt.ticks) {
    ticks.push_back({{"orientation", std::string(to_string(t.orientation))},
                     {"position", point_json(t.position)},
                     {"value", t.value ? J(*t.value) : J(nullptr)}});
  }
  j["ticks"] = std::move(ticks);

  J texts = J::array();
  for (const auto& t : gt.texts) {
    J e = {{"text", t.text},
           {"role", std::string(to_string(t.role))},
           {"polygon", quad_json(t.polygon)},
           {"angle", t.angle},
           {"element", t.element}};
    e["exponent"] = t.exponent ? J(*t.exponent) : J(nullptr);
    e["exponent_polygon"] = t.exponent_polygon ? quad_json(*t.exponent_polygon) : J(nullptr);
    texts.push_back(std::move(e));
  }
  j["texts"] = std::move(texts);

  J legend = J::array();
  for (const auto& l : gt.legend) {
    legend.push_back({{"swatch", bbox_json(l.swatch)},
                      {"color", color_json(l.color)},
                      {"text", l.text},
                      {"element", l.element}});
  }
  j["legend"] = std::move(legend);

  J connectors = J::array();
  for (const auto& c : gt.connectors) {
    connectors.push_back({{"inner", point_json(c.inner)}, {"outer", point_json(c.outer)}, {"row", c.row}});
  }
  j["connectors"] = std::move(connectors);
  return j;
}

GroundTruth ground_truth_from_json(const nlohmann::json& j) {
  try {
    if (j.value("schema_version", 0) != kGroundTruthSchemaVersion) {
      throw Error(ErrorCode::parse, "unsupported ground truth schema_version");
    }
    GroundTruth gt;
    gt.seed = j.at("seed").get<std::uint64_t>();
    gt.width = j.at("width").get<int>();
    gt.height = j.at("height").get<int>();
    gt.background = color_from_json(j.at("background"));
    gt.element_texture = j.value("element_texture", false);
    gt.table = chart_table_from_json(j.at("table"));
    gt.chart_region = bbox_from_json(j.at("chart_region"));
    gt.plot_area = opt_box(j, "plot_area");
    gt.legend_box = opt_box(j, "legend_box");
    gt.x_axis = axis_from(j, "x_axis");
    gt.y_axis = axis_from(j, "y_axis");
    for (const auto& b : j.at("bars")) {
      gt.bars.push_back({bbox_from_json(b.at("box")), color_from_json(b.at("color")), b.at("row").get<int>()});
    }
    if (!j.at("pie").is_null()) {
      const auto& p = j.at("pie");
      PieGroundTruth pie;
      pie.center = point_from_json(p.at("center"));
      pie.radius = p.at("radius").get<double>();
      for (const auto& s : p.at("sectors")) {
        pie.sectors.push_back({s.at("start_deg").get<double>(), s.at("span_deg").get<double>(),
                               color_from_json(s.at("color")), s.at("row").get<int>(), bbox_from_json(s.at("box"))});
      }
      gt.pie = std::move(pie);
    }
    for (const auto& l : j.at("lines")) {
      LineGeometry g;
      for (const auto& v : l.at("vertices")) g.vertices.push_back(point_from_json(v));
      g.color = color_from_json(l.at("color"));
      g.dashed = l.at("dashed").get<bool>();
      g.series = l.at("series").get<int>();
      gt.lines.push_back(std::move(g));
    }
    for (const auto& d : j.at("dots")) {
      gt.dots.push_back({point_from_json(d.at("center")), d.at("radius").get<double>(), color_from_json(d.at("color")),
                         d.at("series").get<int>()});
    }
    for (const auto& t : j.at("ticks")) {
      TickGeometry tick{orientation_from(t.at("orientation")), point_from_json(t.at("position")), std::nullopt};
      if (!t.at("value").is_null()) tick.value = t.at("value").get<double>();
      gt.ticks.push_back(tick);
    }
    for (const auto& t : j.at("texts")) {
      TextBox box;
      box.text = t.at("text").get<std::string>();
      auto role = text_role_from_string(t.at("role").get<std::string>());
      if (!role) throw Error(ErrorCode::parse, "unknown text role");
      box.role = *role;
      box.polygon = quad_from(t.at("polygon"));
      box.angle = t.at("angle").get<double>();
      box.element = t.value("element", -1);
      if (t.contains("exponent") && !t.at("exponent").is_null()) box.exponent = t.at("exponent").get<std::string>();
      if (t.contains("exponent_polygon") && !t.at("exponent_polygon").is_null()) {
        box.exponent_polygon = quad_from(t.at("exponent_polygon"));
      }
      gt.texts.push_back(std::move(box));
    }
    for (const auto& l : j.at("legend")) {
      gt.legend.push_back({bbox_from_json(l.at("swatch")), color_from_json(l.at("color")), l.at("text").get<std::string>(),
                           l.at("element").get<int>()});
    }
    for (const auto& c : j.at("connectors")) {
      gt.connectors.push_back({point_from_json(c.at("inner")), point_from_json(c.at("outer")), c.at("row").get<int>()});
    }
    return gt;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("ground truth: ") + e.what());
  }
}

}  // namespace charter
