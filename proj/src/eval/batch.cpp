#include "charter/eval/batch.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "charter/core/error.hpp"
#include "charter/oracle/detector.hpp"
#include "charter/oracle/ocr.hpp"
#include "charter/synth/rng.hpp"
#include "charter/synth/sampler.hpp"

namespace charter {

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs == 0) jobs = default_jobs();
  jobs = unsigned(std::min<std::size_t>(jobs, n));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; !stop && (i = next++) < n;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        stop = true;
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t chart_oracle_seed(std::uint64_t run_seed, std::uint64_t chart_seed) {
  return mix_seed(run_seed, chart_seed);
}

std::string ChartJob::id() const { return chart_id(type, index); }

std::vector<ChartJob> make_jobs(std::span<const ChartType> types, std::uint64_t first_seed, std::uint64_t count) {
  std::vector<ChartJob> jobs;
  for (ChartType t : types) {
    for (std::uint64_t i = 0; i < count; ++i) jobs.push_back({t, i, first_seed + i});
  }
  return jobs;
}

std::vector<PipelineOutcome> run_pipeline(std::span<const ChartJob> jobs, const PipelineOptions& options) {
  validate(options.noise);
  validate(options.analysis);
  std::vector<PipelineOutcome> out(jobs.size());
  parallel_for(jobs.size(), options.jobs, [&](std::size_t i) {
    const ChartJob& job = jobs[i];
    const SampledChart s = sample_chart(job.seed, job.type, options.synth);
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t seed = chart_oracle_seed(options.oracle_seed, job.seed);
    const DetectorOutput det = simulate_detector(s.chart.gt, options.noise, seed);
    const OcrOutput ocr = simulate_ocr(s.chart.gt, options.noise, seed);
    AnalysisResult result = analyze(det, ocr, s.chart.raster, options.analysis);
    const auto t1 = std::chrono::steady_clock::now();
    out[i] = {job.id(), job.type, s.chart.gt.table, std::move(result), std::chrono::duration<double>(t1 - t0).count()};
  });
  return out;
}

std::vector<EvalItem> eval_items(std::span<const PipelineOutcome> outcomes) {
  std::vector<EvalItem> items;
  items.reserve(outcomes.size());
  for (const PipelineOutcome& o : outcomes) {
    EvalItem item{o.id, o.gt, std::nullopt};
    if (const auto* t = std::get_if<ChartTable>(&o.result)) item.pred = *t;
    items.push_back(std::move(item));
  }
  return items;
}

AblationReport ablation_report(std::span<const ChartJob> pies, const PipelineOptions& options,
                               const std::vector<double>& epsilons) {
  if (pies.empty()) throw Error(ErrorCode::empty_dataset, "ablation needs at least one pie chart");
  for (const ChartJob& j : pies) {
    if (j.type != ChartType::pie) throw Error(ErrorCode::invalid_argument, "ablation runs on pie charts only");
  }
  validate(options.noise);
  AnalysisConfig via_boxes = options.analysis, via_heatmaps = options.analysis;
  via_boxes.pie_method = PieMethod::boxes;
  via_heatmaps.pie_method = PieMethod::heatmaps;
  validate(via_boxes);

  std::vector<EvalItem> boxes(pies.size()), heatmaps(pies.size());
  parallel_for(pies.size(), options.jobs, [&](std::size_t i) {
    const ChartJob& job = pies[i];
    const SampledChart s = sample_chart(job.seed, job.type, options.synth);
    const std::uint64_t seed = chart_oracle_seed(options.oracle_seed, job.seed);
    const DetectorOutput det = simulate_detector(s.chart.gt, options.noise, seed);
    const OcrOutput ocr = simulate_ocr(s.chart.gt, options.noise, seed);
    auto item = [&](const AnalysisConfig& config) {
      EvalItem e{job.id(), s.chart.gt.table, std::nullopt};
      AnalysisResult r = analyze(det, ocr, s.chart.raster, config);
      if (auto* t = std::get_if<ChartTable>(&r)) e.pred = std::move(*t);
      return e;
    };
    boxes[i] = item(via_boxes);
    heatmaps[i] = item(via_heatmaps);
  });

  EvalGrid grid;
  grid.epsilons = epsilons;
  grid.taus = {1.0, 0.8, 0.4, 0.0};
  grid.pairings = {Pairing::label};
  return {evaluate(boxes, grid), evaluate(heatmaps, grid)};
}

}  // namespace charter
