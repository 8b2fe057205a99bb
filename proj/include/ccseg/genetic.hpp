#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ccseg/clustering.hpp"
#include "ccseg/colour_cube.hpp"
#include "ccseg/rng.hpp"

namespace ccseg {

/// Fixed-length bit string encoding one full assignment: one
/// ceil(log2 k)-bit block per point, most significant bit first within a
/// block. Length is exactly chromosome_length(n, k).
struct Chromosome {
  std::vector<std::uint8_t> bits;  // each element 0 or 1

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

enum class MutationMode {
  /// With probability `rate`, flip exactly one uniformly chosen bit.
  chromosome,
  /// Flip every bit independently with probability `rate`.
  bit,
};

enum class CrossoverCut {
  /// Cut anywhere inside the string.
  bit,
  /// Cut only between label blocks.
  label,
};

struct GaConfig {
  std::uint32_t population_size = 50;
  std::uint32_t generations = 10000;
  double crossover_rate = 0.95;
  double mutation_rate = 0.85;
  MutationMode mutation_mode = MutationMode::chromosome;
  CrossoverCut crossover_cut = CrossoverCut::bit;
  std::uint32_t tournament_size = 2;
  std::uint32_t elite_count = 1;
  std::uint64_t seed = 0;
  std::uint32_t k = 6;
};

struct TraceRecord {
  std::uint32_t generation = 0;
  double best_so_far_j = 0.0;
  double gen_best_j = 0.0;
  double gen_mean_j = 0.0;
};

struct GaResult {
  Assignment best_assignment;
  double best_j = 0.0;
  /// One record per generation, generation 0 included; with elitism the
  /// best_so_far_j column is non-increasing.
  std::vector<TraceRecord> trace;
  std::uint64_t evaluations = 0;
};

/// Bits needed to encode one assignment: n * ceil(log2 k). k = 1 needs no
/// bits at all; every point is forced into the single cluster.
std::size_t chromosome_length(std::size_t point_count, std::uint32_t k);

/// Read labels out of a chromosome. Block values >= k are reduced modulo k,
/// so every bit string of the right length decodes to a valid assignment.
Assignment decode(const Chromosome& c, std::size_t point_count, std::uint32_t k);

/// Inverse of decode for valid assignments: decode(encode(a), n, a.k) == a.
Chromosome encode(const Assignment& a);

/// Swap suffixes at `cut` (1 <= cut <= length-1).
std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& a, const Chromosome& b,
                                                      std::size_t cut);

Chromosome mutate(const Chromosome& c, double rate, MutationMode mode, Rng& rng);

/// Index of the fittest (lowest J) among `size` uniform draws with
/// replacement; ties go to the lowest index among the tied draws.
std::size_t tournament_select(std::span<const double> fitnesses, std::uint32_t size, Rng& rng);

/// Generational GA minimizing the weighted clustering objective. Fitness of a
/// chromosome is exactly objective_j(points, decode(chromosome)); the elite
/// individuals are copied unchanged, the rest of each generation is produced
/// by tournament selection, one-point crossover and mutation. Identical
/// config (seed included) and points give a bit-identical result.
GaResult run_ga(std::span<const ColourPoint> points, const GaConfig& cfg);

}  // namespace ccseg
