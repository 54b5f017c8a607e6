#include "charter/eval/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "charter/core/error.hpp"

namespace charter {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string percent(double v) { return fixed(100.0 * v, 1) + "%"; }

bool same(double a, double b) { return std::fabs(a - b) <= 1e-12; }

}  // namespace

void validate(const EvalGrid& grid) {
  if (grid.epsilons.empty() || grid.taus.empty() || grid.pairings.empty()) {
    throw Error(ErrorCode::invalid_config, "evaluation grid needs at least one epsilon, tau and pairing");
  }
  for (double e : grid.epsilons) {
    if (!(e > 0.0)) throw Error(ErrorCode::invalid_config, "epsilon must be positive");
  }
  for (double t : grid.taus) {
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::invalid_config, "tau must lie in [0, 1]");
  }
}

const EvalCell& TypeReport::cell(Pairing pairing, double tau, double epsilon) const {
  for (const EvalCell& c : cells) {
    if (c.pairing == pairing && same(c.tau, tau) && same(c.epsilon, epsilon)) return c;
  }
  throw Error(ErrorCode::invalid_argument, "no such cell in the report");
}

const TypeReport& EvalReport::type(ChartType t) const {
  for (const TypeReport& r : types) {
    if (r.type == t) return r;
  }
  throw Error(ErrorCode::invalid_argument, std::string("no ") + std::string(to_string(t)) + " charts in the report");
}

EvalReport evaluate(std::span<const EvalItem> items, const EvalGrid& grid) {
  validate(grid);
  EvalReport report;
  report.grid = grid;
  for (ChartType t : kAllChartTypes) {
    TypeReport tr;
    tr.type = t;
    for (Pairing p : grid.pairings) {
      for (double tau : grid.taus) {
        for (double eps : grid.epsilons) tr.cells.push_back({p, tau, eps, 0, 0, 0});
      }
    }
    for (const EvalItem& item : items) {
      if (item.gt.type != t) continue;
      ++tr.charts;
      const bool usable = item.pred && item.pred->type == t;
      if (!usable) ++tr.failures;
      for (EvalCell& c : tr.cells) {
        if (!usable) {
          c.gt_count += element_count(item.gt);
          continue;
        }
        const MatchPolicy policy{c.tau, c.epsilon, value_kind_for(t), c.pairing};
        const AccuracyResult r = value_accuracy(*item.pred, item.gt, policy);
        c.gt_count += r.gt_count;
        c.matched += r.matched;
        c.value_tp += r.value_tp;
      }
    }
    if (tr.charts > 0) report.types.push_back(std::move(tr));
  }
  return report;
}

RuntimeStats runtime_stats(std::span<const double> seconds) {
  RuntimeStats s;
  s.charts = seconds.size();
  for (double v : seconds) {
    s.total_seconds += v;
    s.max_seconds = std::max(s.max_seconds, v);
  }
  if (s.charts > 0) s.mean_seconds = s.total_seconds / double(s.charts);
  return s;
}

nlohmann::ordered_json to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["epsilons"] = report.grid.epsilons;
  j["taus"] = report.grid.taus;
  auto pairings = nlohmann::ordered_json::array();
  for (Pairing p : report.grid.pairings) pairings.push_back(std::string(to_string(p)));
  j["pairings"] = pairings;
  auto types = nlohmann::ordered_json::array();
  for (const TypeReport& t : report.types) {
    nlohmann::ordered_json jt;
    jt["type"] = std::string(to_string(t.type));
    jt["charts"] = t.charts;
    jt["failures"] = t.failures;
    auto cells = nlohmann::ordered_json::array();
    for (const EvalCell& c : t.cells) {
      cells.push_back({{"pairing", std::string(to_string(c.pairing))},
                       {"tau", c.tau},
                       {"epsilon", c.epsilon},
                       {"gt", c.gt_count},
                       {"matched", c.matched},
                       {"value_tp", c.value_tp},
                       {"accuracy", c.accuracy()},
                       {"label_rate", c.label_rate()}});
    }
    jt["cells"] = cells;
    types.push_back(jt);
  }
  j["types"] = types;
  if (report.runtime) {
    j["runtime"] = {{"charts", report.runtime->charts},
                    {"total_seconds", report.runtime->total_seconds},
                    {"mean_seconds", report.runtime->mean_seconds},
                    {"max_seconds", report.runtime->max_seconds}};
  }
  return j;
}

EvalReport eval_report_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema_version").get<int>() != kReportSchemaVersion) {
      throw Error(ErrorCode::parse, "unsupported report schema version");
    }
    EvalReport r;
    r.grid.epsilons = j.at("epsilons").get<std::vector<double>>();
    r.grid.taus = j.at("taus").get<std::vector<double>>();
    r.grid.pairings.clear();
    auto pairing = [](const nlohmann::json& v) {
      const auto p = pairing_from_string(v.get<std::string>());
      if (!p) throw Error(ErrorCode::parse, "unknown pairing " + v.get<std::string>());
      return *p;
    };
    for (const auto& p : j.at("pairings")) r.grid.pairings.push_back(pairing(p));
    for (const auto& jt : j.at("types")) {
      TypeReport t;
      const auto type = chart_type_from_string(jt.at("type").get<std::string>());
      if (!type) throw Error(ErrorCode::parse, "unknown chart type in report");
      t.type = *type;
      t.charts = jt.at("charts").get<std::size_t>();
      t.failures = jt.at("failures").get<std::size_t>();
      for (const auto& c : jt.at("cells")) {
        t.cells.push_back({pairing(c.at("pairing")), c.at("tau").get<double>(), c.at("epsilon").get<double>(),
                           c.at("gt").get<std::size_t>(), c.at("matched").get<std::size_t>(),
                           c.at("value_tp").get<std::size_t>()});
      }
      r.types.push_back(std::move(t));
    }
    if (j.contains("runtime")) {
      const auto& rt = j["runtime"];
      r.runtime = RuntimeStats{rt.at("charts").get<std::size_t>(), rt.at("total_seconds").get<double>(),
                               rt.at("mean_seconds").get<double>(), rt.at("max_seconds").get<double>()};
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed report: ") + e.what());
  }
}

std::string to_csv(const EvalReport& report) {
  std::string out = "type,pairing,tau,epsilon,gt,matched,value_tp,accuracy\n";
  for (const TypeReport& t : report.types) {
    for (const EvalCell& c : t.cells) {
      out += std::string(to_string(t.type)) + "," + std::string(to_string(c.pairing)) + "," + fixed(c.tau, 2) + "," +
             fixed(c.epsilon, 3) + "," + std::to_string(c.gt_count) + "," + std::to_string(c.matched) + "," +
             std::to_string(c.value_tp) + "," + fixed(c.accuracy(), 4) + "\n";
    }
  }
  return out;
}

std::string to_markdown(const EvalReport& report) {
  std::string out;
  for (const TypeReport& t : report.types) {
    out += "### " + std::string(to_string(t.type)) + " (" + std::to_string(t.charts) + " charts, " +
           std::to_string(t.failures) + " failed)\n\n| pairing | τ |";
    for (double e : report.grid.epsilons) out += " ε=" + fixed(e, 3) + " |";
    out += "\n|---|---|";
    for (std::size_t i = 0; i < report.grid.epsilons.size(); ++i) out += "---|";
    out += "\n";
    for (Pairing p : report.grid.pairings) {
      for (double tau : report.grid.taus) {
        out += "| " + std::string(to_string(p)) + " | " + fixed(tau, 2) + " |";
        for (double e : report.grid.epsilons) out += " " + percent(t.cell(p, tau, e).accuracy()) + " |";
        out += "\n";
      }
    }
    out += "\n";
  }
  if (report.runtime) {
    out += "Runtime: " + std::to_string(report.runtime->charts) + " charts, " +
           fixed(report.runtime->total_seconds, 2) + " s total, " + fixed(report.runtime->mean_seconds * 1000.0, 1) +
           " ms mean, " + fixed(report.runtime->max_seconds * 1000.0, 1) + " ms max\n";
  }
  return out;
}

nlohmann::ordered_json to_json(const AblationReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["boxes"] = to_json(report.boxes);
  j["heatmaps"] = to_json(report.heatmaps);
  return j;
}

namespace {

const TypeReport* pie_part(const EvalReport& r) {
  for (const TypeReport& t : r.types) {
    if (t.type == ChartType::pie) return &t;
  }
  return nullptr;
}

}  // namespace

std::string to_csv(const AblationReport& report) {
  std::string out = "method,tau,epsilon,gt,matched,value_tp,accuracy\n";
  const std::pair<const char*, const EvalReport*> parts[] = {{"boxes", &report.boxes}, {"heatmaps", &report.heatmaps}};
  for (const auto& [name, r] : parts) {
    const TypeReport* t = pie_part(*r);
    if (!t) continue;
    for (const EvalCell& c : t->cells) {
      if (c.pairing != Pairing::label) continue;
      out += std::string(name) + "," + fixed(c.tau, 2) + "," + fixed(c.epsilon, 3) + "," + std::to_string(c.gt_count) +
             "," + std::to_string(c.matched) + "," + std::to_string(c.value_tp) + "," + fixed(c.accuracy(), 4) + "\n";
    }
  }
  return out;
}

std::string to_markdown(const AblationReport& report) {
  const TypeReport* boxes = pie_part(report.boxes);
  const TypeReport* heat = pie_part(report.heatmaps);
  if (!boxes || !heat) return "No pie charts evaluated.\n";
  const auto& eps = report.heatmaps.grid.epsilons;
  std::string out = "| τ |";
  for (double e : eps) out += " boxes ε=" + fixed(e, 3) + " | heatmaps ε=" + fixed(e, 3) + " |";
  out += "\n|---|";
  for (std::size_t i = 0; i < eps.size(); ++i) out += "---|---|";
  out += "\n";
  for (double tau : report.heatmaps.grid.taus) {
    out += "| " + fixed(tau, 2) + " |";
    for (double e : eps) {
      out += " " + percent(boxes->cell(Pairing::label, tau, e).accuracy()) + " | " +
             percent(heat->cell(Pairing::label, tau, e).accuracy()) + " |";
    }
    out += "\n";
  }
  return out;
}

}  // namespace charter
