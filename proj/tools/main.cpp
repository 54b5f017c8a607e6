#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "charter/core/error.hpp"
#include "charter/oracle/serialize.hpp"
#include "commands.hpp"
#include "run_config.hpp"

using namespace charter;

int main(int argc, char** argv) {
  CLI::App app{"Recover data tables from chart images; generate, simulate, extract and score datasets."};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, types, noise, oracle, format, out, in, gt;
  std::uint64_t seed = 0, count = 0;
  unsigned jobs = 0;
  std::vector<double> epsilons, taus;
  std::vector<std::string> ids, overrides;

  auto* o_config = app.add_option("--config", config_path, "JSON config file (flags win over it)");
  auto* o_seed = app.add_option("--seed", seed, "Run seed");
  auto* o_count = app.add_option("--count", count, "Charts per type");
  auto* o_types = app.add_option("--types", types, "Comma list of vbar,hbar,bar,pie,line,scatter,all");
  auto* o_noise = app.add_option("--noise", noise, "clean, mild, harsh or a NoiseConfig JSON path");
  auto* o_oracle = app.add_option("--oracle", oracle, "Simulate detector/OCR from ground truth with this noise");
  auto* o_eps = app.add_option("--epsilon", epsilons, "Relative error bounds")->delimiter(',');
  auto* o_tau = app.add_option("--tau", taus, "Label ratio thresholds")->delimiter(',');
  auto* o_out = app.add_option("--out", out, "Output directory");
  auto* o_in = app.add_option("--in", in, "Input dataset or prediction directory");
  auto* o_gt = app.add_option("--gt", gt, "Ground-truth dataset for evaluate (default --in)");
  auto* o_jobs = app.add_option("--jobs", jobs, "Worker threads (default: all cores)");
  auto* o_format = app.add_option("--format", format, "Report format: json, csv or md");
  app.add_option("--id", ids, "Chart ids for overlay");
  app.add_option("--set", overrides, "Analysis threshold override key=value");

  app.add_subcommand("generate", "Render synthetic charts with ground truth and heatmaps");
  app.add_subcommand("oracle", "Simulate detector and OCR outputs for a dataset");
  app.add_subcommand("extract", "Recover a table per chart");
  app.add_subcommand("evaluate", "Score extracted tables against ground truth");
  app.add_subcommand("ablate", "Compare pie extraction from boxes and from heatmaps");
  app.add_subcommand("overlay", "Draw recovered geometry over the charts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsageError;
  }

  try {
    cli::RunConfig c;
    c.command = app.get_subcommands().front()->get_name();
    for (int i = 0; i < argc; ++i) c.command_line += (i ? " " : "") + std::string(argv[i]);
    cli::apply_environment(c);
    if (*o_config) cli::apply_config(c, read_json_file(config_path));
    if (*o_seed) c.seed = seed;
    if (*o_count) c.count = count;
    if (*o_types) c.types = cli::parse_types(types);
    if (*o_noise) c.noise = noise;
    if (*o_oracle) c.oracle = oracle;
    if (*o_eps) c.epsilons = epsilons;
    if (*o_tau) c.taus = taus;
    if (*o_out) c.out = out;
    if (*o_in) c.in = in;
    if (*o_gt) c.gt = gt;
    if (*o_jobs) c.jobs = jobs;
    if (*o_format) {
      const auto f = cli::report_format_from_string(format);
      if (!f) throw Error(ErrorCode::invalid_config, "--format must be json, csv or md");
      c.format = *f;
    }
    c.ids = ids;
    for (const auto& s : overrides) cli::apply_override(c, s);
    return cli::run_command(c);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return cli::kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kUsageError;
  }
}
