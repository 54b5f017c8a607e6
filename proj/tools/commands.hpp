#pragma once

#include "run_config.hpp"

namespace charter::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kPartialFailure = 2 };

// Each command returns kSuccess or kPartialFailure and throws charter::Error
// for configuration and IO problems that stop the whole run.

/// Charts, ground truth and heatmaps for every requested type, plus
/// manifest.json.
int cmd_generate(const RunConfig& config);
/// Detector and OCR documents simulated from a generated dataset.
int cmd_oracle(const RunConfig& config);
/// One `<id>.table.json` per chart, failures.json and predictions.json.
int cmd_extract(const RunConfig& config);
/// Scores predictions against the dataset and writes report.<format>.
int cmd_evaluate(const RunConfig& config);
/// Boxes-vs-heatmaps pie comparison, written as ablation.<format>.
int cmd_ablate(const RunConfig& config);
/// `<id>.overlay.png` with the recovered geometry drawn over each chart.
int cmd_overlay(const RunConfig& config);

/// Dispatches on config.command and appends a line to `<out>/run.log`.
int run_command(const RunConfig& config);

}  // namespace charter::cli
