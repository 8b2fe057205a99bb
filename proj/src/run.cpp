#include "ccseg/run.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

#include "ccseg/errors.hpp"
#include "ccseg/image_io.hpp"
#include "ccseg/segmentation.hpp"

namespace ccseg {

namespace {

std::string fixed6(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

MutationMode parse_mutation_mode(const std::string& mode) {
  if (mode == "chromosome") {
    return MutationMode::chromosome;
  }
  if (mode == "bit") {
    return MutationMode::bit;
  }
  throw ConfigError("mutation-mode must be 'chromosome' or 'bit', got '" + mode + "'");
}

void validate(const RunConfig& cfg) {
  if (cfg.input_path.empty()) {
    throw ConfigError("input path must not be empty");
  }
  if (cfg.output_dir.empty()) {
    throw ConfigError("out-dir must not be empty");
  }
  if (cfg.algorithm != "ga" && cfg.algorithm != "lloyd" && cfg.algorithm != "brute") {
    throw ConfigError("algorithm must be one of ga, lloyd, brute; got '" + cfg.algorithm + "'");
  }
  if (cfg.clusters == 0) {
    throw ConfigError("clusters must be at least 1");
  }
  if (!valid_cube_side(cfg.cube_side)) {
    throw ConfigError("cube-side must be a power of two in [1, 256], got " +
                      std::to_string(cfg.cube_side));
  }
  if (cfg.population == 0) {
    throw ConfigError("population must be at least 1");
  }
  if (cfg.generations == 0) {
    throw ConfigError("generations must be at least 1");
  }
  if (cfg.crossover_rate < 0.0 || cfg.crossover_rate > 1.0) {
    throw ConfigError("crossover-rate must lie in [0, 1]");
  }
  if (cfg.mutation_rate < 0.0 || cfg.mutation_rate > 1.0) {
    throw ConfigError("mutation-rate must lie in [0, 1]");
  }
  parse_mutation_mode(cfg.mutation_mode);
  if (cfg.tournament == 0 || cfg.tournament > cfg.population) {
    throw ConfigError("tournament must lie in [1, population]");
  }
  if (cfg.elite >= cfg.population) {
    throw ConfigError("elite must be smaller than population");
  }
  if (cfg.lloyd_max_iter < 1) {
    throw ConfigError("lloyd iteration limit must be at least 1");
  }
}

// One finished artifact: content is complete in the temporary file, and the
// final name appears only when every artifact of the run has been written.
struct PendingFile {
  std::filesystem::path tmp;
  std::filesystem::path final_path;
};

class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {}

  ~ArtifactWriter() {
    // A run that failed before finalize() leaves nothing behind.
    for (const PendingFile& p : pending_) {
      std::error_code ec;
      std::filesystem::remove(p.tmp, ec);
    }
  }

  std::filesystem::path stage(const std::string& name) {
    PendingFile p{dir_ / (name + ".tmp"), dir_ / name};
    pending_.push_back(p);
    return pending_.back().tmp;
  }

  void finalize() {
    for (const PendingFile& p : pending_) {
      std::error_code ec;
      std::filesystem::rename(p.tmp, p.final_path, ec);
      if (ec) {
        throw IoError("cannot finalize " + p.final_path.string() + ": " + ec.message());
      }
    }
    pending_.clear();
  }

 private:
  std::filesystem::path dir_;
  std::vector<PendingFile> pending_;
};

void write_text_file(const std::string& content, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << content;
  if (!out) {
    throw IoError("failed while writing " + path.string());
  }
}

struct AlgorithmOutcome {
  Assignment assignment;
  ClusterModel model;
  double final_j = 0.0;
  // Algorithm-specific counters; exactly one is meaningful.
  std::vector<TraceRecord> trace;   // ga
  std::uint64_t evaluations = 0;    // ga
  int iterations = 0;               // lloyd
  std::uint64_t enumerated = 0;     // brute
};

AlgorithmOutcome run_algorithm(const RunConfig& cfg, const QuantizedHistogram& q) {
  AlgorithmOutcome out;
  if (cfg.algorithm == "ga") {
    GaConfig ga;
    ga.population_size = cfg.population;
    ga.generations = cfg.generations;
    ga.crossover_rate = cfg.crossover_rate;
    ga.mutation_rate = cfg.mutation_rate;
    ga.mutation_mode = parse_mutation_mode(cfg.mutation_mode);
    ga.tournament_size = cfg.tournament;
    ga.elite_count = cfg.elite;
    ga.seed = cfg.seed;
    ga.k = cfg.clusters;
    GaResult result = run_ga(q.points, ga);
    out.assignment = std::move(result.best_assignment);
    out.model = weighted_centroids(q.points, out.assignment);
    out.final_j = result.best_j;
    out.trace = std::move(result.trace);
    out.evaluations = result.evaluations;
  } else if (cfg.algorithm == "lloyd") {
    if (cfg.clusters > q.points.size()) {
      throw ConfigError("clusters (" + std::to_string(cfg.clusters) +
                        ") exceeds the occupied subcube count (" +
                        std::to_string(q.points.size()) + ") required by algorithm lloyd");
    }
    LloydResult result = lloyd(q.points, cfg.clusters, cfg.seed, cfg.lloyd_max_iter);
    out.assignment = std::move(result.assignment);
    out.model = std::move(result.model);
    out.final_j = result.objective.j;
    out.iterations = result.iterations;
  } else {
    BruteForceResult result = brute_force_optimum(q.points, cfg.clusters, cfg.brute_budget);
    out.assignment = std::move(result.assignment);
    out.model = weighted_centroids(q.points, out.assignment);
    out.final_j = result.objective.j;
    out.enumerated = result.enumerated;
  }
  return out;
}

std::string format_report(const RunConfig& cfg, const ColourHistogram& histogram,
                          const QuantizedHistogram& q, const AlgorithmOutcome& outcome,
                          const SegmentationOutput& seg, double duration_seconds) {
  std::ostringstream out;
  out << "input=" << cfg.input_path.string() << '\n';
  out << "algorithm=" << cfg.algorithm << '\n';
  out << "clusters=" << cfg.clusters << '\n';
  out << "cube_side=" << cfg.cube_side << '\n';
  out << "population=" << cfg.population << '\n';
  out << "generations=" << cfg.generations << '\n';
  out << "crossover_rate=" << fixed6(cfg.crossover_rate) << '\n';
  out << "mutation_rate=" << fixed6(cfg.mutation_rate) << '\n';
  out << "mutation_mode=" << cfg.mutation_mode << '\n';
  out << "tournament=" << cfg.tournament << '\n';
  out << "elite=" << cfg.elite << '\n';
  out << "seed=" << cfg.seed << '\n';
  out << "pixels=" << histogram.source_pixel_count << '\n';
  out << "distinct_colours=" << histogram.entries.size() << '\n';
  out << "occupied_subcubes=" << q.points.size() << '\n';
  out << "chromosome_length=" << chromosome_length(q.points.size(), cfg.clusters) << '\n';
  out << "final_j=" << fixed6(outcome.final_j) << '\n';
  if (cfg.algorithm == "ga") {
    out << "evaluations=" << outcome.evaluations << '\n';
  } else if (cfg.algorithm == "lloyd") {
    out << "iterations=" << outcome.iterations << '\n';
  } else {
    out << "enumerated=" << outcome.enumerated << '\n';
  }
  char duration[64];
  std::snprintf(duration, sizeof(duration), "%.3f", duration_seconds);
  out << "duration_seconds=" << duration << '\n';
  for (std::size_t i = 0; i < seg.stats.size(); ++i) {
    out << "cluster_" << i << "_pixels=" << seg.stats[i].pixel_count << '\n';
    out << "cluster_" << i << "_mean=";
    if (seg.stats[i].mean_colour) {
      const Rgbd& mean = *seg.stats[i].mean_colour;
      out << fixed6(mean.r) << ',' << fixed6(mean.g) << ',' << fixed6(mean.b);
    } else {
      out << "none";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

void write_trace(std::span<const TraceRecord> trace, const std::filesystem::path& path) {
  if (trace.empty()) {
    throw InvalidInputError("cannot write an empty trace");
  }
  std::ostringstream out;
  out << "generation,best_so_far_j,gen_best_j,gen_mean_j\n";
  for (const TraceRecord& record : trace) {
    out << record.generation << ',' << fixed6(record.best_so_far_j) << ','
        << fixed6(record.gen_best_j) << ',' << fixed6(record.gen_mean_j) << '\n';
  }
  write_text_file(out.str(), path);
}

int run(const RunConfig& config, std::ostream& diagnostics) {
  try {
    validate(config);

    const auto started = std::chrono::steady_clock::now();
    const Image input = load_image(config.input_path);
    const ColourHistogram histogram = build_histogram(input);
    const QuantizedHistogram quantized = quantize(histogram, config.cube_side);

    const AlgorithmOutcome outcome = run_algorithm(config, quantized);

    const LabelImage labels = label_pixels(input, quantized, outcome.assignment);
    const SegmentationOutput seg = render_and_mask(input, labels, outcome.model);
    const double duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) {
      throw IoError("cannot create output directory " + config.output_dir.string() + ": " +
                    ec.message());
    }

    ArtifactWriter writer(config.output_dir);
    save_png(seg.rendered, writer.stage("segmented.png"));
    if (config.emit_masks) {
      for (std::size_t i = 0; i < seg.masks.size(); ++i) {
        save_png(seg.masks[i], writer.stage("mask_" + std::to_string(i) + ".png"));
      }
    }
    if (config.emit_trace && config.algorithm == "ga") {
      write_trace(outcome.trace, writer.stage("trace.csv"));
    }
    write_text_file(format_report(config, histogram, quantized, outcome, seg, duration_seconds),
                    writer.stage("report.txt"));
    writer.finalize();
    return kExitOk;
  } catch (const ConfigError& e) {
    diagnostics << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const BudgetExceededError& e) {
    diagnostics << "budget error: " << e.what()
                << "; use --algorithm ga or --algorithm lloyd for instances this large" << '\n';
    return kExitBudgetError;
  } catch (const IoError& e) {
    diagnostics << "I/O error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const Error& e) {
    diagnostics << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace ccseg
