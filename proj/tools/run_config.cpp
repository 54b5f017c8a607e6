#include "run_config.hpp"

#include <cstdio>
#include <cstdlib>
#include <set>

#include "charter/core/error.hpp"
#include "charter/oracle/serialize.hpp"

namespace charter::cli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::invalid_config, what); }

template <typename T>
T get(const nlohmann::json& v, const char* key) {
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    bad(std::string("config: bad value for ") + key);
  }
}

}  // namespace

std::optional<ReportFormat> report_format_from_string(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  if (name == "md") return ReportFormat::md;
  return std::nullopt;
}

std::string_view extension(ReportFormat format) {
  switch (format) {
    case ReportFormat::json: return "json";
    case ReportFormat::csv: return "csv";
    case ReportFormat::md: return "md";
  }
  return "json";
}

std::vector<ChartType> parse_types(const std::string& list) {
  std::vector<ChartType> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    const std::string name = list.substr(start, comma - start);
    if (name == "all") {
      out.assign(kAllChartTypes.begin(), kAllChartTypes.end());
    } else if (name == "bar") {
      out.push_back(ChartType::vbar);
      out.push_back(ChartType::hbar);
    } else if (const auto t = chart_type_from_string(name)) {
      out.push_back(*t);
    } else {
      bad("unknown chart type '" + name + "'");
    }
    start = comma + 1;
  }
  // Fixed order and no repeats, whatever the spelling.
  std::vector<ChartType> unique;
  for (ChartType t : kAllChartTypes) {
    if (std::find(out.begin(), out.end(), t) != out.end()) unique.push_back(t);
  }
  return unique;
}

void apply_config(RunConfig& c, const nlohmann::json& doc) {
  if (!doc.is_object()) bad("config: expected a JSON object");
  static const std::set<std::string> known = {"seed", "count",  "types", "noise",    "oracle",   "epsilon",
                                              "tau",  "jobs",   "format", "synth",   "analysis", "schema_version"};
  for (const auto& [key, v] : doc.items()) {
    if (!known.count(key)) bad("config: unknown key '" + key + "'");
  }
  if (doc.contains("seed")) c.seed = get<std::uint64_t>(doc["seed"], "seed");
  if (doc.contains("count")) c.count = get<std::uint64_t>(doc["count"], "count");
  if (doc.contains("types")) {
    std::string joined;
    for (const auto& t : doc["types"]) joined += (joined.empty() ? "" : ",") + get<std::string>(t, "types");
    c.types = parse_types(joined);
  }
  if (doc.contains("noise")) c.noise = get<std::string>(doc["noise"], "noise");
  if (doc.contains("oracle") && !doc["oracle"].is_null()) c.oracle = get<std::string>(doc["oracle"], "oracle");
  if (doc.contains("epsilon")) c.epsilons = get<std::vector<double>>(doc["epsilon"], "epsilon");
  if (doc.contains("tau")) c.taus = get<std::vector<double>>(doc["tau"], "tau");
  if (doc.contains("jobs")) c.jobs = get<unsigned>(doc["jobs"], "jobs");
  if (doc.contains("format")) {
    const auto f = report_format_from_string(get<std::string>(doc["format"], "format"));
    if (!f) bad("config: format must be json, csv or md");
    c.format = *f;
  }
  if (doc.contains("synth")) c.synth = synth_config_from_json(doc["synth"], c.synth);
  if (doc.contains("analysis")) {
    nlohmann::json merged = to_json(c.analysis);
    merged.merge_patch(doc["analysis"]);
    for (const auto& [key, v] : doc["analysis"].items()) {
      if (!to_json(AnalysisConfig{}).contains(key)) bad("config: unknown analysis key '" + key + "'");
    }
    c.analysis = analysis_config_from_json(merged);
  }
}

void apply_environment(RunConfig& config) {
  const char* path = std::getenv("CHARTER_CONFIG");
  if (!path || !*path) return;
  apply_config(config, read_json_file(path));
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) bad("override must look like key=value: " + assignment);
  std::string key = assignment.substr(0, eq);
  if (key.starts_with("analysis.")) key = key.substr(9);
  nlohmann::json value;
  try {
    value = nlohmann::json::parse(assignment.substr(eq + 1));
  } catch (const nlohmann::json::exception&) {
    value = assignment.substr(eq + 1);
  }
  apply_config(config, {{"analysis", {{key, value}}}});
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace charter::cli
