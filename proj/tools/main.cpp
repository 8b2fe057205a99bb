#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ccseg/run.hpp"

int main(int argc, char** argv) {
  ccseg::RunConfig cfg;
  std::string input;
  std::string out_dir;

  CLI::App app{"Colour-cube genetic k-means image segmentation"};
  app.set_config("--config", "", "Read key=value defaults from a file; explicit flags win");
  app.add_option("--input", input, "Input image, PNG or binary PPM")->required();
  app.add_option("--out-dir", out_dir, "Directory for the output artifacts")->required();
  app.add_option("--algorithm", cfg.algorithm, "Clustering algorithm: ga, lloyd or brute")
      ->capture_default_str();
  app.add_option("--clusters", cfg.clusters, "Number of colour clusters")->capture_default_str();
  app.add_option("--cube-side", cfg.cube_side,
                 "Subcube side for colour pre-partitioning; a power of two dividing 256")
      ->capture_default_str();
  app.add_option("--population", cfg.population, "GA population size")->capture_default_str();
  app.add_option("--generations", cfg.generations, "GA generation count")->capture_default_str();
  app.add_option("--crossover-rate", cfg.crossover_rate, "GA crossover probability in [0, 1]")
      ->capture_default_str();
  app.add_option("--mutation-rate", cfg.mutation_rate, "GA mutation probability in [0, 1]")
      ->capture_default_str();
  app.add_option("--mutation-mode", cfg.mutation_mode, "GA mutation mode: chromosome or bit")
      ->capture_default_str();
  app.add_option("--tournament", cfg.tournament, "GA tournament size")->capture_default_str();
  app.add_option("--elite", cfg.elite, "GA elite count")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed; identical seeds give identical outputs")
      ->capture_default_str();
  app.add_flag("--trace", cfg.emit_trace, "Write a per-generation trace.csv (GA only)");
  app.add_flag("--masks", cfg.emit_masks, "Write one binary mask_<i>.png per cluster");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ccseg::kExitOk : ccseg::kExitConfigError;
  }

  cfg.input_path = input;
  cfg.output_dir = out_dir;
  return ccseg::run(cfg, std::cerr);
}
