#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "charter/analysis/analyze.hpp"
#include "charter/analysis/config.hpp"
#include "charter/eval/report.hpp"
#include "charter/oracle/noise.hpp"
#include "charter/synth/chart_spec.hpp"

namespace charter {

/// Hardware concurrency, at least 1.
unsigned default_jobs();

/// Calls fn(i) for every i in [0, n) on up to `jobs` threads (0 means
/// default_jobs()). Threads pull the next index from a shared counter, so
/// uneven charts balance out. The first exception is rethrown after all
/// threads stop.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

/// One chart of a generated dataset: id `<type>_<index>`, sampled from `seed`.
struct ChartJob {
  ChartType type = ChartType::vbar;
  std::uint64_t index = 0;
  std::uint64_t seed = 0;

  std::string id() const;
};

/// `count` charts per type with seeds first_seed .. first_seed + count - 1,
/// grouped by type in the given order.
std::vector<ChartJob> make_jobs(std::span<const ChartType> types, std::uint64_t first_seed, std::uint64_t count);

/// Seed of the detector and OCR simulation for one chart of a run.
std::uint64_t chart_oracle_seed(std::uint64_t run_seed, std::uint64_t chart_seed);

struct PipelineOptions {
  SynthConfig synth;
  NoiseConfig noise;
  AnalysisConfig analysis;
  /// Run seed of the detector and OCR simulation.
  std::uint64_t oracle_seed = 0;
  unsigned jobs = 0;
};

struct PipelineOutcome {
  std::string id;
  ChartType type = ChartType::vbar;
  ChartTable gt;
  AnalysisResult result;
  double seconds = 0.0;
};

/// Generate, simulate the detector and OCR and analyze every job. Outcomes come back in job order whatever the thread
/// count.
std::vector<PipelineOutcome> run_pipeline(std::span<const ChartJob> jobs, const PipelineOptions& options);

std::vector<EvalItem> eval_items(std::span<const PipelineOutcome> outcomes);

/// Runs the pie jobs once through the oracle and analyzes each twice, with
/// box proposals and with heatmaps. Throws Error(empty_dataset) for no jobs
/// and Error(invalid_argument) for non-pie jobs.
AblationReport ablation_report(std::span<const ChartJob> pies, const PipelineOptions& options,
                               const std::vector<double>& epsilons);

}  // namespace charter
