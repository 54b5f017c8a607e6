#include "charter/analysis/chart_table.hpp"

#include <array>
#include <sstream>

#include "charter/core/error.hpp"

namespace charter {

namespace {

constexpr std::array<std::string_view, 5> kTypeNames = {"vbar", "hbar", "pie", "line", "scatter"};
constexpr std::array<std::string_view, 9> kProvenanceNames = {
    "axis-interpolated", "value-on-bar", "legend",   "connector",    "adjacent-text",
    "axis-label",        "geometry",     "positional", "ground-truth",
};

template <typename T, std::size_t N>
std::optional<T> lookup(const std::array<std::string_view, N>& names, std::string_view name) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == name) return static_cast<T>(i);
  }
  return std::nullopt;
}

void put_optional(nlohmann::ordered_json& j, const char* key, const std::optional<std::string>& v) {
  if (v) j[key] = *v; else j[key] = nullptr;
}

std::optional<std::string> get_optional(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

nlohmann::ordered_json range_json(const std::optional<AxisRange>& r) {
  if (!r) return nullptr;
  return nlohmann::ordered_json{{"min", r->min}, {"max", r->max}};
}

std::optional<AxisRange> range_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return AxisRange{j.at(key).at("min").get<double>(), j.at(key).at("max").get<double>()};
}

Provenance provenance_at(const nlohmann::json& j, const char* key) {
  auto p = provenance_from_string(j.at(key).get<std::string>());
  if (!p) throw Error(ErrorCode::parse, std::string("unknown provenance in ") + key);
  return *p;
}

// CSV field quoting per RFC 4180.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string_view to_string(ChartType type) { return kTypeNames[static_cast<std::size_t>(type)]; }

std::optional<ChartType> chart_type_from_string(std::string_view name) {
  return lookup<ChartType>(kTypeNames, name);
}

std::string_view to_string(Provenance p) { return kProvenanceNames[static_cast<std::size_t>(p)]; }

std::optional<Provenance> provenance_from_string(std::string_view name) {
  return lookup<Provenance>(kProvenanceNames, name);
}

nlohmann::ordered_json to_json(const ChartTable& table) {
  nlohmann::ordered_json j;
  j["schema_version"] = kTableSchemaVersion;
  j["chart_type"] = std::string(to_string(table.type));
  put_optional(j, "title", table.title);
  put_optional(j, "caption", table.caption);
  put_optional(j, "x_title", table.x_title);
  put_optional(j, "y_title", table.y_title);
  j["x_range"] = range_json(table.x_range);
  j["y_range"] = range_json(table.y_range);
  auto rows = nlohmann::ordered_json::array();
  for (const TableRow& r : table.rows) {
    rows.push_back({{"label", r.label},
                    {"value", r.value},
                    {"label_source", std::string(to_string(r.label_source))},
                    {"value_source", std::string(to_string(r.value_source))},
                    {"confidence", r.confidence}});
  }
  j["rows"] = std::move(rows);
  auto series = nlohmann::ordered_json::array();
  for (const TableSeries& s : table.series) {
    auto pts = nlohmann::ordered_json::array();
    for (const DataPoint& p : s.points) pts.push_back({p.x, p.y});
    series.push_back({{"label", s.label},
                      {"points", std::move(pts)},
                      {"label_source", std::string(to_string(s.label_source))},
                      {"value_source", std::string(to_string(s.value_source))},
                      {"calibrated", s.calibrated},
                      {"confidence", s.confidence}});
  }
  j["series"] = std::move(series);
  return j;
}

ChartTable chart_table_from_json(const nlohmann::json& j) {
  try {
    if (j.value("schema_version", 0) != kTableSchemaVersion) {
      throw Error(ErrorCode::parse, "unsupported table schema_version");
    }
    ChartTable t;
    auto type = chart_type_from_string(j.at("chart_type").get<std::string>());
    if (!type) throw Error(ErrorCode::parse, "unknown chart_type");
    t.type = *type;
    t.title = get_optional(j, "title");
    t.caption = get_optional(j, "caption");
    t.x_title = get_optional(j, "x_title");
    t.y_title = get_optional(j, "y_title");
    t.x_range = range_from(j, "x_range");
    t.y_range = range_from(j, "y_range");
    for (const auto& r : j.at("rows")) {
      t.rows.push_back({r.at("label").get<std::string>(), r.at("value").get<double>(),
                        provenance_at(r, "label_source"), provenance_at(r, "value_source"),
                        r.value("confidence", 1.0)});
    }
    for (const auto& s : j.at("series")) {
      TableSeries ts;
      ts.label = s.at("label").get<std::string>();
      for (const auto& p : s.at("points")) ts.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      ts.label_source = provenance_at(s, "label_source");
      ts.value_source = provenance_at(s, "value_source");
      ts.calibrated = s.value("calibrated", true);
      ts.confidence = s.value("confidence", 1.0);
      t.series.push_back(std::move(ts));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("chart table: ") + e.what());
  }
}

std::string to_csv(const ChartTable& table) {
  std::ostringstream os;
  os.precision(17);
  if (!table.rows.empty()) {
    os << "label,value\n";
    for (const TableRow& r : table.rows) os << csv_field(r.label) << ',' << r.value << '\n';
  }
  if (!table.series.empty()) {
    os << "series,x,y\n";
    for (const TableSeries& s : table.series) {
      for (const DataPoint& p : s.points) os << csv_field(s.label) << ',' << p.x << ',' << p.y << '\n';
    }
  }
  return os.str();
}

}  // namespace charter
