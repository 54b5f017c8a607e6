#include "commands.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>

#include "charter/analysis/analyze.hpp"
#include "charter/core/error.hpp"
#include "charter/core/png_io.hpp"
#include "charter/eval/batch.hpp"
#include "charter/eval/report.hpp"
#include "charter/oracle/detector.hpp"
#include "charter/oracle/ocr.hpp"
#include "charter/oracle/serialize.hpp"
#include "charter/synth/heatmaps.hpp"
#include "charter/synth/sampler.hpp"
#include "overlay.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace charter::cli {

namespace {

constexpr int kManifestSchemaVersion = 1;

struct Entry {
  std::string id;
  std::optional<ChartType> type;
  std::uint64_t seed = 0;
};

struct Failure {
  std::string id;
  std::string code;
  std::string message;
};

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorCode::invalid_config, what); }

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(ErrorCode::io, "cannot create directory " + dir.string());
}

fs::path out_dir(const RunConfig& c) {
  if (!c.out.empty()) return c.out;
  if (!c.in.empty()) return c.in;
  usage(c.command + " needs --out");
}

fs::path in_dir(const RunConfig& c) {
  if (c.in.empty()) usage(c.command + " needs --in");
  if (!fs::is_directory(c.in)) throw Error(ErrorCode::io, "no such directory " + c.in.string());
  return c.in;
}

ordered_json types_json(const std::vector<ChartType>& types) {
  auto j = ordered_json::array();
  for (ChartType t : types) j.push_back(std::string(to_string(t)));
  return j;
}

// The manifest when present, else every `<id>.det.json` in the directory.
std::vector<Entry> dataset_entries(const fs::path& dir) {
  std::vector<Entry> out;
  const fs::path manifest = dir / "manifest.json";
  if (fs::exists(manifest)) {
    const auto j = read_json_file(manifest);
    try {
      for (const auto& c : j.at("charts")) {
        out.push_back({c.at("id").get<std::string>(), chart_type_from_string(c.at("type").get<std::string>()),
                       c.at("seed").get<std::uint64_t>()});
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::parse, manifest.string() + ": " + e.what());
    }
    return out;
  }
  const std::string suffix = ".det.json";
  for (const auto& f : fs::directory_iterator(dir)) {
    const std::string name = f.path().filename().string();
    if (name.size() > suffix.size() && name.ends_with(suffix)) {
      out.push_back({name.substr(0, name.size() - suffix.size()), std::nullopt, 0});
    }
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.id < b.id; });
  if (out.empty()) throw Error(ErrorCode::io, "no manifest.json or detector documents in " + dir.string());
  return out;
}

std::optional<std::string> dataset_hash(const fs::path& dir) {
  const fs::path manifest = dir / "manifest.json";
  if (!fs::exists(manifest)) return std::nullopt;
  const auto j = read_json_file(manifest);
  if (!j.contains("config_hash")) return std::nullopt;
  return j["config_hash"].get<std::string>();
}

void write_failures(const fs::path& dir, const std::vector<Failure>& failures) {
  auto j = ordered_json::array();
  for (const Failure& f : failures) j.push_back({{"id", f.id}, {"code", f.code}, {"message", f.message}});
  write_json_file(dir / "failures.json", j);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
}

// Runs `fn` over the entries; errors of one chart become its failure.
template <typename Fn>
std::vector<Failure> for_each_chart(const std::vector<Entry>& entries, unsigned jobs, Fn fn) {
  std::vector<std::optional<Failure>> slots(entries.size());
  parallel_for(entries.size(), jobs, [&](std::size_t i) {
    try {
      if (auto f = fn(entries[i])) slots[i] = std::move(f);
    } catch (const Error& e) {
      slots[i] = Failure{entries[i].id, to_string(e.code()), e.what()};
    } catch (const std::exception& e) {
      slots[i] = Failure{entries[i].id, "invalid_argument", e.what()};
    }
  });
  std::vector<Failure> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

struct Inputs {
  Raster raster{1, 1};
  DetectorOutput det;
  OcrOutput ocr;
};

Inputs load_inputs(const RunConfig& c, const fs::path& dir, const Entry& e) {
  Inputs in;
  in.raster = read_png(dir / (e.id + ".png"));
  if (c.oracle) {
    const NoiseConfig noise = load_noise(*c.oracle);
    const GroundTruth gt = ground_truth_from_json(read_json_file(dir / (e.id + ".gt.json")));
    const std::uint64_t seed = chart_oracle_seed(c.seed.value_or(0), gt.seed);
    in.det = simulate_detector(gt, read_heatmap_dir(dir / (e.id + ".hm")), noise, seed);
    in.ocr = simulate_ocr(gt, noise, seed);
  } else {
    in.det = read_detector(dir / (e.id + ".det.json"));
    in.ocr = ocr_from_json(read_json_file(dir / (e.id + ".ocr.json")));
  }
  return in;
}

void report_failures(const std::vector<Failure>& failures) {
  for (const Failure& f : failures) std::cerr << f.id << ": " << f.code << ": " << f.message << "\n";
}

}  // namespace

int cmd_generate(const RunConfig& c) {
  if (!c.seed) usage("generate needs --seed");
  if (c.out.empty()) usage("generate needs --out");
  validate(c.synth);
  ensure_dir(c.out);
  const auto jobs = make_jobs(c.types, *c.seed, c.count);

  ordered_json hashed;
  hashed["seed"] = *c.seed;
  hashed["count"] = c.count;
  hashed["types"] = types_json(c.types);
  hashed["synth"] = to_json(c.synth);
  ordered_json manifest;
  manifest["schema_version"] = kManifestSchemaVersion;
  manifest["kind"] = "dataset";
  manifest["seed"] = *c.seed;
  manifest["count"] = c.count;
  manifest["types"] = hashed["types"];
  manifest["config_hash"] = fnv1a_hex(hashed.dump());
  manifest["synth"] = hashed["synth"];
  auto charts = ordered_json::array();
  for (const ChartJob& j : jobs) charts.push_back({{"id", j.id()}, {"type", std::string(to_string(j.type))}, {"seed", j.seed}});
  manifest["charts"] = charts;
  // Written first so an unwritable directory fails before any work.
  write_json_file(c.out / "manifest.json", manifest);

  parallel_for(jobs.size(), c.jobs, [&](std::size_t i) {
    const ChartJob& job = jobs[i];
    const SampledChart s = sample_chart(job.seed, job.type, c.synth);
    const std::string id = job.id();
    write_png(c.out / (id + ".png"), s.chart.raster);
    write_json_file(c.out / (id + ".gt.json"), to_json(s.chart.gt));
    write_heatmap_dir(c.out / (id + ".hm"), emit_heatmaps(s.chart.gt));
  });
  std::cout << "generated " << jobs.size() << " charts in " << c.out.string() << "\n";
  return kSuccess;
}

int cmd_oracle(const RunConfig& c) {
  if (!c.seed) usage("oracle needs --seed");
  const fs::path in = in_dir(c), out = out_dir(c);
  const NoiseConfig noise = load_noise(c.noise);
  ensure_dir(out);
  const auto entries = dataset_entries(in);
  const auto failures = for_each_chart(entries, c.jobs, [&](const Entry& e) -> std::optional<Failure> {
    const GroundTruth gt = ground_truth_from_json(read_json_file(in / (e.id + ".gt.json")));
    const std::uint64_t seed = chart_oracle_seed(*c.seed, gt.seed);
    const DetectorOutput det = simulate_detector(gt, read_heatmap_dir(in / (e.id + ".hm")), noise, seed);
    write_detector(out / (e.id + ".det.json"), det, e.id + ".det.hm");
    write_json_file(out / (e.id + ".ocr.json"), to_json(simulate_ocr(gt, noise, seed)));
    return std::nullopt;
  });
  ordered_json meta;
  meta["schema_version"] = kManifestSchemaVersion;
  meta["kind"] = "oracle";
  meta["seed"] = *c.seed;
  meta["noise"] = to_json(noise);
  meta["config_hash"] = fnv1a_hex(meta.dump());
  write_json_file(out / "oracle.json", meta);
  write_failures(out, failures);
  report_failures(failures);
  std::cout << "simulated " << entries.size() - failures.size() << " of " << entries.size() << " charts\n";
  return failures.empty() ? kSuccess : kPartialFailure;
}

int cmd_extract(const RunConfig& c) {
  const fs::path in = in_dir(c), out = out_dir(c);
  validate(c.analysis);
  if (c.oracle) load_noise(*c.oracle);
  ensure_dir(out);
  const auto entries = dataset_entries(in);
  const auto failures = for_each_chart(entries, c.jobs, [&](const Entry& e) -> std::optional<Failure> {
    const Inputs inputs = load_inputs(c, in, e);
    const AnalysisResult r = analyze(inputs.det, inputs.ocr, inputs.raster, c.analysis);
    if (const auto* f = std::get_if<AnalysisFailure>(&r)) return Failure{e.id, to_string(f->code), f->message};
    write_json_file(out / (e.id + ".table.json"), to_json(std::get<ChartTable>(r)));
    return std::nullopt;
  });

  ordered_json meta;
  meta["schema_version"] = kManifestSchemaVersion;
  meta["kind"] = "predictions";
  const auto hash = dataset_hash(in);
  meta["dataset_hash"] = hash ? ordered_json(*hash) : ordered_json(nullptr);
  meta["oracle"] = c.oracle ? ordered_json(*c.oracle) : ordered_json(nullptr);
  meta["analysis"] = to_json(c.analysis);
  auto ids = ordered_json::array();
  for (const Entry& e : entries) ids.push_back(e.id);
  meta["ids"] = ids;
  write_json_file(out / "predictions.json", meta);
  write_failures(out, failures);
  report_failures(failures);
  std::cout << "extracted " << entries.size() - failures.size() << " of " << entries.size() << " charts\n";
  return failures.empty() ? kSuccess : kPartialFailure;
}

int cmd_evaluate(const RunConfig& c) {
  const fs::path pred_dir = in_dir(c);
  const fs::path gt_dir = c.gt.empty() ? pred_dir : c.gt;
  const fs::path out = c.out.empty() ? pred_dir : c.out;
  EvalGrid grid;
  grid.epsilons = c.epsilons;
  grid.taus = c.taus;
  validate(grid);
  if (!fs::exists(gt_dir / "manifest.json")) throw Error(ErrorCode::io, "no manifest.json in " + gt_dir.string());
  const auto entries = dataset_entries(gt_dir);

  const fs::path pred_manifest = pred_dir / "predictions.json";
  if (!fs::exists(pred_manifest)) throw Error(ErrorCode::io, "no predictions.json in " + pred_dir.string());
  const auto pm = read_json_file(pred_manifest);
  std::set<std::string> expected, got;
  for (const Entry& e : entries) expected.insert(e.id);
  for (const auto& id : pm.value("ids", nlohmann::json::array())) got.insert(id.get<std::string>());
  const auto hash = dataset_hash(gt_dir);
  const bool same_hash = pm.value("dataset_hash", nlohmann::json()).is_null() ||
                         (hash && pm["dataset_hash"].get<std::string>() == *hash);
  if (expected != got || !same_hash) usage("predictions in " + pred_dir.string() + " do not match the dataset manifest");

  std::vector<EvalItem> items(entries.size());
  parallel_for(entries.size(), c.jobs, [&](std::size_t i) {
    const Entry& e = entries[i];
    items[i].id = e.id;
    items[i].gt = ground_truth_from_json(read_json_file(gt_dir / (e.id + ".gt.json"))).table;
    const fs::path table = pred_dir / (e.id + ".table.json");
    if (fs::exists(table)) items[i].pred = chart_table_from_json(read_json_file(table));
  });
  const EvalReport report = evaluate(items, grid);
  ensure_dir(out);
  const fs::path path = out / ("report." + std::string(extension(c.format)));
  switch (c.format) {
    case ReportFormat::json: write_json_file(path, to_json(report)); break;
    case ReportFormat::csv: write_text(path, to_csv(report)); break;
    case ReportFormat::md: write_text(path, to_markdown(report)); break;
  }
  std::cout << to_markdown(report);
  return kSuccess;
}

int cmd_ablate(const RunConfig& c) {
  if (c.out.empty()) usage("ablate needs --out");
  PipelineOptions options;
  options.synth = c.synth;
  options.noise = load_noise(c.noise);
  options.analysis = c.analysis;
  options.oracle_seed = c.seed.value_or(0);
  options.jobs = c.jobs;
  const std::vector<ChartType> pie{ChartType::pie};
  const auto jobs = make_jobs(pie, c.seed.value_or(0), c.count);
  const AblationReport report = ablation_report(jobs, options, c.epsilons);
  ensure_dir(c.out);
  const fs::path path = c.out / ("ablation." + std::string(extension(c.format)));
  switch (c.format) {
    case ReportFormat::json: write_json_file(path, to_json(report)); break;
    case ReportFormat::csv: write_text(path, to_csv(report)); break;
    case ReportFormat::md: write_text(path, to_markdown(report)); break;
  }
  std::cout << to_markdown(report);
  return kSuccess;
}

int cmd_overlay(const RunConfig& c) {
  const fs::path in = in_dir(c), out = out_dir(c);
  validate(c.analysis);
  ensure_dir(out);
  auto entries = dataset_entries(in);
  if (!c.ids.empty()) {
    std::erase_if(entries, [&](const Entry& e) { return std::find(c.ids.begin(), c.ids.end(), e.id) == c.ids.end(); });
    if (entries.size() != c.ids.size()) usage("unknown chart id among --id values");
  }
  const auto failures = for_each_chart(entries, c.jobs, [&](const Entry& e) -> std::optional<Failure> {
    const Inputs inputs = load_inputs(c, in, e);
    AnalysisDetails details;
    const AnalysisResult r = analyze(inputs.det, inputs.ocr, inputs.raster, c.analysis, &details);
    write_png(out / (e.id + ".overlay.png"), render_overlay(inputs.raster, details, inputs.ocr));
    if (const auto* f = std::get_if<AnalysisFailure>(&r)) return Failure{e.id, to_string(f->code), f->message};
    return std::nullopt;
  });
  report_failures(failures);
  return failures.empty() ? kSuccess : kPartialFailure;
}

int run_command(const RunConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  int code = kSuccess;
  if (c.command == "generate") {
    code = cmd_generate(c);
  } else if (c.command == "oracle") {
    code = cmd_oracle(c);
  } else if (c.command == "extract") {
    code = cmd_extract(c);
  } else if (c.command == "evaluate") {
    code = cmd_evaluate(c);
  } else if (c.command == "ablate") {
    code = cmd_ablate(c);
  } else if (c.command == "overlay") {
    code = cmd_overlay(c);
  } else {
    usage("unknown command " + c.command);
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  // Timestamps live only here so every other artifact is reproducible.
  fs::path log_dir = c.out;
  if (log_dir.empty() && c.command != "generate" && c.command != "ablate") log_dir = c.in;
  if (!log_dir.empty() && fs::is_directory(log_dir)) {
    const std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    std::ofstream log(log_dir / "run.log", std::ios::app);
    log << stamp << " exit=" << code << " seconds=" << seconds << " " << c.command_line << "\n";
  }
  return code;
}

}  // namespace charter::cli
