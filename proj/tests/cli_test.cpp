#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "charter/core/png_io.hpp"
#include "charter/oracle/serialize.hpp"
#include "charter/synth/ground_truth.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
using namespace charter;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "charter_cli_test";

int charter_run(const std::string& args) {
  const std::string cmd = std::string(CHARTER_CLI) + " " + args + " >" + (kRoot / "stdout.txt").string() + " 2>" +
                          (kRoot / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Every file under `dir` except run.log, keyed by relative path.
std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& f : fs::recursive_directory_iterator(dir)) {
    if (!f.is_regular_file() || f.path().filename() == "run.log") continue;
    out[fs::relative(f.path(), dir).string()] = slurp(f.path());
  }
  return out;
}

struct Scratch {
  Scratch() {
    fs::remove_all(kRoot);
    fs::create_directories(kRoot);
  }
  ~Scratch() { fs::remove_all(kRoot); }
};

std::string dir(const std::string& name) { return (kRoot / name).string(); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate, oracle, extract and evaluate") {
  Scratch s;
  REQUIRE(charter_run("generate --seed 7 --count 2 --out " + dir("ds")) == 0);
  CHECK(fs::exists(kRoot / "ds" / "manifest.json"));
  CHECK(fs::exists(kRoot / "ds" / "pie_00001.png"));
  CHECK(fs::exists(kRoot / "ds" / "scatter_00000.gt.json"));
  CHECK(fs::exists(kRoot / "ds" / "line_00000.hm" / "line.png"));
  CHECK(fs::exists(kRoot / "ds" / "run.log"));

  REQUIRE(charter_run("oracle --seed 3 --noise mild --in " + dir("ds")) == 0);
  CHECK(fs::exists(kRoot / "ds" / "vbar_00001.det.json"));
  CHECK(fs::exists(kRoot / "ds" / "vbar_00001.ocr.json"));
  REQUIRE(charter_run("extract --in " + dir("ds") + " --out " + dir("pred")) <= 2);
  CHECK(fs::exists(kRoot / "pred" / "predictions.json"));
  CHECK(fs::exists(kRoot / "pred" / "failures.json"));
  REQUIRE(charter_run("evaluate --in " + dir("pred") + " --gt " + dir("ds") + " --format csv") == 0);
  CHECK(slurp(kRoot / "pred" / "report.csv").starts_with("type,pairing,tau,epsilon"));
  CHECK(slurp(kRoot / "stdout.txt").find("pie") != std::string::npos);
}

TEST_CASE("generation is reproducible") {
  Scratch s;
  REQUIRE(charter_run("generate --seed 11 --count 2 --types bar,pie --out " + dir("a")) == 0);
  REQUIRE(charter_run("generate --seed 11 --count 2 --types bar,pie --out " + dir("b")) == 0);
  const auto a = snapshot(kRoot / "a"), b = snapshot(kRoot / "b");
  CHECK(a.size() > 10);
  CHECK(a == b);
  REQUIRE(charter_run("generate --seed 12 --count 2 --types bar,pie --out " + dir("c")) == 0);
  CHECK(snapshot(kRoot / "c") != a);
}

TEST_CASE("empty datasets and usage errors") {
  Scratch s;
  REQUIRE(charter_run("generate --seed 1 --count 0 --out " + dir("empty")) == 0);
  const auto m = read_json_file(kRoot / "empty" / "manifest.json");
  CHECK(m["charts"].empty());

  CHECK(charter_run("generate --count 2 --out " + dir("x")) == 1);
  CHECK(charter_run("generate --seed 1 --count 2 --types donut --out " + dir("x")) == 1);
  CHECK(charter_run("frobnicate") == 1);
  CHECK(charter_run("--help") == 0);
  CHECK(charter_run("generate --seed 1 --set bogus=3 --out " + dir("x")) == 1);

  // A file where the output directory should go.
  std::ofstream(kRoot / "blocker") << "x";
  CHECK(charter_run("generate --seed 1 --count 1 --out " + (kRoot / "blocker" / "sub").string()) != 0);
}

TEST_CASE("configuration layering") {
  Scratch s;
  std::ofstream(kRoot / "cfg.json") << R"({"count": 1, "types": ["pie"]})";
  REQUIRE(charter_run("generate --config " + dir("cfg.json") + " --seed 2 --out " + dir("one")) == 0);
  auto m = read_json_file(kRoot / "one" / "manifest.json");
  CHECK(m["charts"].size() == 1);
  CHECK(m["types"] == nlohmann::json::array({"pie"}));
  REQUIRE(charter_run("generate --config " + dir("cfg.json") + " --count 3 --seed 2 --out " + dir("three")) == 0);
  m = read_json_file(kRoot / "three" / "manifest.json");
  CHECK(m["charts"].size() == 3);
  std::ofstream(kRoot / "bad.json") << R"({"cuont": 1})";
  CHECK(charter_run("generate --config " + dir("bad.json") + " --seed 2 --out " + dir("bad")) == 1);
}

TEST_CASE("a chart with broken inputs is reported and the rest extracted") {
  Scratch s;
  REQUIRE(charter_run("generate --seed 5 --count 2 --types vbar --out " + dir("ds")) == 0);
  fs::remove(kRoot / "ds" / "vbar_00001.hm" / "bar_top_left.png");
  CHECK(charter_run("extract --oracle clean --seed 1 --in " + dir("ds") + " --out " + dir("pred")) == 2);
  const auto failures = read_json_file(kRoot / "pred" / "failures.json");
  REQUIRE(failures.size() == 1);
  CHECK(failures[0]["id"] == "vbar_00001");
  CHECK(failures[0]["code"] == "io");
  CHECK(fs::exists(kRoot / "pred" / "vbar_00000.table.json"));
  CHECK_FALSE(fs::exists(kRoot / "pred" / "vbar_00001.table.json"));

  // The failed chart counts as missed, not as an error.
  CHECK(charter_run("evaluate --in " + dir("pred") + " --gt " + dir("ds")) == 0);
  const auto report = read_json_file(kRoot / "pred" / "report.json");
  CHECK(report["types"][0]["failures"] == 1);
}

TEST_CASE("external detector and OCR documents without ground truth") {
  Scratch s;
  REQUIRE(charter_run("generate --seed 9 --count 1 --types line --out " + dir("ds")) == 0);
  REQUIRE(charter_run("oracle --seed 2 --in " + dir("ds") + " --out " + dir("ext")) == 0);
  fs::copy_file(kRoot / "ds" / "line_00000.png", kRoot / "ext" / "line_00000.png");
  fs::remove(kRoot / "ext" / "oracle.json");
  fs::remove(kRoot / "ext" / "failures.json");
  CHECK(charter_run("extract --in " + dir("ext") + " --out " + dir("pred")) == 0);
  const auto table = read_json_file(kRoot / "pred" / "line_00000.table.json");
  CHECK(table["chart_type"] == "line");
  CHECK(read_json_file(kRoot / "pred" / "predictions.json")["dataset_hash"].is_null());
}

TEST_CASE("evaluation refuses predictions of another dataset") {
  Scratch s;
  REQUIRE(charter_run("generate --seed 1 --count 1 --types pie --out " + dir("a")) == 0);
  REQUIRE(charter_run("generate --seed 2 --count 1 --types pie --out " + dir("b")) == 0);
  REQUIRE(charter_run("extract --oracle clean --in " + dir("a") + " --out " + dir("pa")) == 0);
  CHECK(charter_run("evaluate --in " + dir("pa") + " --gt " + dir("b")) == 1);
  REQUIRE(charter_run("generate --seed 1 --count 2 --types pie --out " + dir("c")) == 0);
  CHECK(charter_run("evaluate --in " + dir("pa") + " --gt " + dir("c")) == 1);
  CHECK(charter_run("evaluate --in " + dir("pa") + " --gt " + dir("a")) == 0);
}

TEST_CASE("ablate writes both methods") {
  Scratch s;
  REQUIRE(charter_run("ablate --seed 3 --count 3 --epsilon 0.05 --format md --out " + dir("abl")) == 0);
  const std::string md = slurp(kRoot / "abl" / "ablation.md");
  CHECK(md.find("boxes") != std::string::npos);
  CHECK(md.find("heatmaps") != std::string::npos);
}

TEST_CASE("overlay of a pie traces its circle") {
  Scratch s;
  REQUIRE(charter_run("generate --seed 4 --count 1 --types pie --out " + dir("ds")) == 0);
  REQUIRE(charter_run("overlay --oracle clean --in " + dir("ds") + " --out " + dir("ov") + " --id pie_00000") == 0);
  const fs::path png = kRoot / "ov" / "pie_00000.overlay.png";
  REQUIRE(fs::exists(png));
  const std::string golden = slurp(fs::path(CHARTER_TEST_DATA) / "pie_00000.overlay.png");
  CHECK(slurp(png) == golden);

  const GroundTruth gt = ground_truth_from_json(read_json_file(kRoot / "ds" / "pie_00000.gt.json"));
  const Raster r = read_png(png);
  const Point c = gt.pie->center;
  std::size_t red = 0, on_circle = 0;
  for (int y = 0; y < r.height(); ++y) {
    for (int x = 0; x < r.width(); ++x) {
      const double d = distance({double(x), double(y)}, c);
      if (r.at(x, y) != Color{255, 0, 0} || d < gt.pie->radius / 2) continue;
      ++red;
      on_circle += std::fabs(d - gt.pie->radius) <= 2.0;
    }
  }
  CHECK(red > 300);
  CHECK(on_circle == red);
  CHECK(charter_run("overlay --oracle clean --in " + dir("ds") + " --id nope") == 1);
}

}
