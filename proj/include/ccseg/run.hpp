#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "ccseg/clustering.hpp"
#include "ccseg/genetic.hpp"

namespace ccseg {

/// One CLI invocation's worth of configuration. String fields mirror the
/// command line verbatim; run() validates them and reports the offending
/// field by name.
struct RunConfig {
  std::filesystem::path input_path;
  std::filesystem::path output_dir;
  std::string algorithm = "ga";  // ga | lloyd | brute
  std::uint32_t clusters = 6;
  int cube_side = 32;
  std::uint32_t population = 50;
  std::uint32_t generations = 10000;
  double crossover_rate = 0.95;
  double mutation_rate = 0.85;
  std::string mutation_mode = "chromosome";  // chromosome | bit
  std::uint32_t tournament = 2;
  std::uint32_t elite = 1;
  std::uint64_t seed = 0;
  bool emit_trace = false;
  bool emit_masks = false;

  // Not exposed as flags; kept configurable for tests.
  std::uint64_t brute_budget = kDefaultEnumerationBudget;
  int lloyd_max_iter = 1000;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitIoError = 2;
inline constexpr int kExitBudgetError = 3;

/// Execute one segmentation run: load the input, build and quantize the
/// histogram, run the chosen algorithm, and write `segmented.png`, optional
/// `mask_<i>.png` files, an optional `trace.csv` (GA only) and `report.txt`
/// into the output directory. Artifacts are written to temporary names and
/// renamed into place only when every write succeeded, so a failed run leaves
/// no partial outputs.
///
/// Returns one of the kExit* codes; error details go to `diagnostics`.
int run(const RunConfig& config, std::ostream& diagnostics);

/// Write a GA trace as a comma-separated table: header
/// `generation,best_so_far_j,gen_best_j,gen_mean_j`, one row per generation
/// (generation 0 included), J values with 6 decimal places.
void write_trace(std::span<const TraceRecord> trace, const std::filesystem::path& path);

}  // namespace ccseg
