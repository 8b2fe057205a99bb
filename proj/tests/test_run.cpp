#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ccseg/errors.hpp"
#include "ccseg/image_io.hpp"
#include "ccseg/run.hpp"
#include "support.hpp"

using namespace ccseg;
using ccseg_test::read_binary;
using ccseg_test::TempDir;
using ccseg_test::without_duration_line;

namespace {

Image two_blob_image() {
  Image image(8, 8, {30, 30, 30});
  for (int y = 0; y < 8; ++y) {
    for (int x = 4; x < 8; ++x) {
      image.at(x, y) = {200, 200, 200};
    }
  }
  return image;
}

struct Report {
  std::vector<std::string> keys;
  std::map<std::string, std::string> values;
};

Report parse_report(const std::string& text) {
  Report report;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    REQUIRE(eq != std::string::npos);
    const std::string key = line.substr(0, eq);
    report.keys.push_back(key);
    report.values[key] = line.substr(eq + 1);
  }
  return report;
}

std::size_t entry_count(const std::filesystem::path& dir) {
  std::size_t n = 0;
  for ([[maybe_unused]] const auto& entry : std::filesystem::directory_iterator(dir)) {
    ++n;
  }
  return n;
}

int run_quiet(const RunConfig& cfg, std::string* diagnostics = nullptr) {
  std::ostringstream sink;
  const int code = ccseg::run(cfg, sink);
  if (diagnostics != nullptr) {
    *diagnostics = sink.str();
  }
  return code;
}

int run_cli(const std::string& args) {
  const std::string command = std::string(CCSEG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("run produces the artifact set for a lloyd run") {
  TempDir dir;
  const auto input = dir.file("input.ppm");
  save_ppm(two_blob_image(), input);
  const auto out = dir.path() / "out";

  RunConfig cfg;
  cfg.input_path = input;
  cfg.output_dir = out;
  cfg.algorithm = "lloyd";
  cfg.clusters = 2;
  CHECK(run_quiet(cfg) == kExitOk);

  CHECK(std::filesystem::exists(out / "segmented.png"));
  CHECK(std::filesystem::exists(out / "report.txt"));
  CHECK_FALSE(std::filesystem::exists(out / "trace.csv"));
  CHECK_FALSE(std::filesystem::exists(out / "mask_0.png"));
  for (const auto& entry : std::filesystem::directory_iterator(out)) {
    CHECK(entry.path().extension() != ".tmp");
  }

  const Report report = parse_report(read_binary(out / "report.txt"));
  const std::vector<std::string> expected_keys = {
      "input",          "algorithm",       "clusters",
      "cube_side",      "population",      "generations",
      "crossover_rate", "mutation_rate",   "mutation_mode",
      "tournament",     "elite",           "seed",
      "pixels",         "distinct_colours", "occupied_subcubes",
      "chromosome_length", "final_j",      "iterations",
      "duration_seconds", "cluster_0_pixels", "cluster_0_mean",
      "cluster_1_pixels", "cluster_1_mean"};
  CHECK(report.keys == expected_keys);
  CHECK(report.values.at("algorithm") == "lloyd");
  CHECK(report.values.at("clusters") == "2");
  CHECK(report.values.at("pixels") == "64");
  CHECK(report.values.at("distinct_colours") == "2");
  CHECK(report.values.at("occupied_subcubes") == "2");
  CHECK(report.values.at("chromosome_length") == "2");
  CHECK(report.values.at("final_j") == "0.000000");
  CHECK(report.values.at("cluster_0_pixels") == "32");
  CHECK(report.values.at("cluster_1_pixels") == "32");

  // The two pure blobs come back as their own colours, one cluster each.
  const std::string mean0 = report.values.at("cluster_0_mean");
  const std::string mean1 = report.values.at("cluster_1_mean");
  const bool dark_then_light = mean0 == "30.000000,30.000000,30.000000" &&
                               mean1 == "200.000000,200.000000,200.000000";
  const bool light_then_dark = mean0 == "200.000000,200.000000,200.000000" &&
                               mean1 == "30.000000,30.000000,30.000000";
  CHECK((dark_then_light || light_then_dark));

  const Image segmented = load_image(out / "segmented.png");
  CHECK(segmented.width() == 8);
  CHECK(segmented.height() == 8);
}

TEST_CASE("run emits masks and a ga trace when asked") {
  TempDir dir;
  const auto input = dir.file("input.ppm");
  save_ppm(two_blob_image(), input);
  const auto out = dir.path() / "out";

  RunConfig cfg;
  cfg.input_path = input;
  cfg.output_dir = out;
  cfg.algorithm = "ga";
  cfg.clusters = 2;
  cfg.population = 10;
  cfg.generations = 20;
  cfg.seed = 9;
  cfg.emit_trace = true;
  cfg.emit_masks = true;
  CHECK(run_quiet(cfg) == kExitOk);

  CHECK(std::filesystem::exists(out / "mask_0.png"));
  CHECK(std::filesystem::exists(out / "mask_1.png"));
  const std::string trace = read_binary(out / "trace.csv");
  CHECK(trace.rfind("generation,best_so_far_j,gen_best_j,gen_mean_j\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : trace) {
    lines += c == '\n';
  }
  CHECK(lines == 22);  // header + generations 0..20

  const Report report = parse_report(read_binary(out / "report.txt"));
  CHECK(report.values.at("algorithm") == "ga");
  CHECK(report.values.at("evaluations") == "210");  // 10 * (20 + 1)
  CHECK(report.values.count("iterations") == 0);

  // Masks partition the image: each pixel black in exactly one.
  const Image mask0 = load_image(out / "mask_0.png");
  const Image mask1 = load_image(out / "mask_1.png");
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      const bool in0 = mask0.at(x, y) == Rgb8{0, 0, 0};
      const bool in1 = mask1.at(x, y) == Rgb8{0, 0, 0};
      CHECK(in0 != in1);
    }
  }
}

TEST_CASE("run ignores the trace request for non-ga algorithms") {
  TempDir dir;
  const auto input = dir.file("input.ppm");
  save_ppm(two_blob_image(), input);
  const auto out = dir.path() / "out";

  RunConfig cfg;
  cfg.input_path = input;
  cfg.output_dir = out;
  cfg.algorithm = "brute";
  cfg.clusters = 2;
  cfg.emit_trace = true;
  CHECK(run_quiet(cfg) == kExitOk);
  CHECK_FALSE(std::filesystem::exists(out / "trace.csv"));

  const Report report = parse_report(read_binary(out / "report.txt"));
  CHECK(report.values.at("enumerated") == "4");  // 2 points, k = 2
  CHECK(report.values.at("final_j") == "0.000000");
}

TEST_CASE("run rejects bad configuration, naming the offending flag") {
  TempDir dir;
  const auto input = dir.file("input.ppm");
  save_ppm(two_blob_image(), input);

  RunConfig good;
  good.input_path = input;
  good.output_dir = dir.path() / "out";

  const auto expect_config_error = [&](RunConfig cfg, const std::string& flag) {
    std::string diagnostics;
    CHECK(run_quiet(cfg, &diagnostics) == kExitConfigError);
    CHECK(diagnostics.find(flag) != std::string::npos);
    CHECK_FALSE(std::filesystem::exists(dir.path() / "out"));
  };

  RunConfig cfg = good;
  cfg.algorithm = "annealing";
  expect_config_error(cfg, "algorithm");
  cfg = good;
  cfg.clusters = 0;
  expect_config_error(cfg, "clusters");
  cfg = good;
  cfg.cube_side = 3;
  expect_config_error(cfg, "cube-side");
  cfg = good;
  cfg.population = 0;
  expect_config_error(cfg, "population");
  cfg = good;
  cfg.generations = 0;
  expect_config_error(cfg, "generations");
  cfg = good;
  cfg.crossover_rate = 1.5;
  expect_config_error(cfg, "crossover-rate");
  cfg = good;
  cfg.mutation_rate = -0.25;
  expect_config_error(cfg, "mutation-rate");
  cfg = good;
  cfg.mutation_mode = "both";
  expect_config_error(cfg, "mutation-mode");
  cfg = good;
  cfg.tournament = 0;
  expect_config_error(cfg, "tournament");
  cfg = good;
  cfg.elite = cfg.population;
  expect_config_error(cfg, "elite");
  cfg = good;
  cfg.input_path.clear();
  expect_config_error(cfg, "input");
  cfg = good;
  cfg.output_dir.clear();
  expect_config_error(cfg, "out-dir");
}

TEST_CASE("run maps lloyd k > points onto the clusters flag") {
  TempDir dir;
  const auto input = dir.file("input.ppm");
  save_ppm(two_blob_image(), input);  // 2 occupied subcubes

  RunConfig cfg;
  cfg.input_path = input;
  cfg.output_dir = dir.path() / "out";
  cfg.algorithm = "lloyd";
  cfg.clusters = 6;
  std::string diagnostics;
  CHECK(run_quiet(cfg, &diagnostics) == kExitConfigError);
  CHECK(diagnostics.find("clusters") != std::string::npos);
}

TEST_CASE("run survives k larger than the point count with the ga") {
  TempDir dir;
  const auto input = dir.file("flat.ppm");
  save_ppm(Image(8, 8, {90, 90, 90}), input);  // a single occupied subcube
  const auto out = dir.path() / "out";

  RunConfig cfg;
  cfg.input_path = input;
  cfg.output_dir = out;
  cfg.algorithm = "ga";
  cfg.clusters = 6;
  cfg.population = 10;
  cfg.generations = 5;
  cfg.emit_masks = true;
  CHECK(run_quiet(cfg) == kExitOk);

  const Report report = parse_report(read_binary(out / "report.txt"));
  std::uint64_t assigned = 0;
  int masks = 0;
  for (int c = 0; c < 6; ++c) {
    assigned += std::stoull(report.values.at("cluster_" + std::to_string(c) + "_pixels"));
    masks += std::filesystem::exists(out / ("mask_" + std::to_string(c) + ".png"));
  }
  CHECK(assigned == 64);
  CHECK(masks == 6);
}

TEST_CASE("run reports io failures with exit code 2") {
  TempDir dir;

  RunConfig cfg;
  cfg.input_path = dir.file("missing.ppm");
  cfg.output_dir = dir.path() / "out";
  CHECK(run_quiet(cfg) == kExitIoError);
  CHECK_FALSE(std::filesystem::exists(dir.path() / "out"));

  // Output directory path through a regular file cannot be created.
  const auto input = dir.file("input.ppm");
  save_ppm(two_blob_image(), input);
  cfg.input_path = input;
  cfg.output_dir = input / "out";
  cfg.algorithm = "lloyd";
  cfg.clusters = 2;
  CHECK(run_quiet(cfg) == kExitIoError);
}

TEST_CASE("run reports an exceeded enumeration budget without touching the directory") {
  TempDir dir;
  const auto input = dir.file("noise.ppm");
  Rng rng(97);
  save_ppm(ccseg_test::random_image(rng, 40, 40), input);
  const auto out = dir.path() / "out";
  std::filesystem::create_directories(out);

  RunConfig cfg;
  cfg.input_path = input;
  cfg.output_dir = out;
  cfg.algorithm = "brute";
  cfg.clusters = 6;
  std::string diagnostics;
  CHECK(run_quiet(cfg, &diagnostics) == kExitBudgetError);
  CHECK(diagnostics.find("budget") != std::string::npos);
  CHECK(entry_count(out) == 0);
}

TEST_CASE("identical configuration gives identical artifacts") {
  TempDir dir;
  const auto input = dir.file("input.ppm");
  save_ppm(two_blob_image(), input);

  RunConfig cfg;
  cfg.input_path = input;
  cfg.algorithm = "ga";
  cfg.clusters = 2;
  cfg.population = 10;
  cfg.generations = 20;
  cfg.seed = 9;
  cfg.emit_trace = true;
  cfg.emit_masks = true;

  cfg.output_dir = dir.path() / "first";
  CHECK(run_quiet(cfg) == kExitOk);
  cfg.output_dir = dir.path() / "second";
  CHECK(run_quiet(cfg) == kExitOk);

  const auto first = dir.path() / "first";
  const auto second = dir.path() / "second";
  CHECK(read_binary(first / "segmented.png") == read_binary(second / "segmented.png"));
  CHECK(read_binary(first / "trace.csv") == read_binary(second / "trace.csv"));
  CHECK(read_binary(first / "mask_0.png") == read_binary(second / "mask_0.png"));
  CHECK(read_binary(first / "mask_1.png") == read_binary(second / "mask_1.png"));
  // Only the wall-clock line may differ.
  CHECK(without_duration_line(read_binary(first / "report.txt")) ==
        without_duration_line(read_binary(second / "report.txt")));
}

TEST_CASE("cli maps flags, config files and errors to the exit contract") {
  TempDir dir;
  const auto input = dir.file("input.ppm");
  save_ppm(two_blob_image(), input);

  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("--out-dir " + (dir.path() / "x").string()) == 1);  // missing --input
  CHECK(run_cli("--input " + input.string() + " --out-dir " + (dir.path() / "x").string() +
                " --no-such-flag") == 1);
  CHECK(run_cli("--input " + input.string() + " --out-dir " + (dir.path() / "x").string() +
                " --clusters notanumber") == 1);

  const auto out = dir.path() / "cli_out";
  CHECK(run_cli("--input " + input.string() + " --out-dir " + out.string() +
                " --algorithm lloyd --clusters 2 --masks") == 0);
  CHECK(std::filesystem::exists(out / "segmented.png"));
  CHECK(std::filesystem::exists(out / "mask_1.png"));
  CHECK(std::filesystem::exists(out / "report.txt"));

  // Config file supplies defaults; explicit flags still win.
  const auto config_file = dir.file("run.conf");
  ccseg_test::write_binary(config_file, "algorithm=lloyd\nclusters=6\n");
  const auto out2 = dir.path() / "cli_out2";
  CHECK(run_cli("--config " + config_file.string() + " --input " + input.string() +
                " --out-dir " + out2.string() + " --clusters 2") == 0);
  const Report report = parse_report(read_binary(out2 / "report.txt"));
  CHECK(report.values.at("algorithm") == "lloyd");
  CHECK(report.values.at("clusters") == "2");

  // Unreadable input exits with the io code.
  CHECK(run_cli("--input " + dir.file("absent.ppm").string() + " --out-dir " +
                (dir.path() / "y").string()) == 2);
}
