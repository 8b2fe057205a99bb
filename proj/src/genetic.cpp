#include "ccseg/genetic.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "ccseg/errors.hpp"

namespace ccseg {

namespace {

// ceil(log2 k); 0 for k = 1.
std::uint32_t bits_per_label(std::uint32_t k) {
  return static_cast<std::uint32_t>(std::bit_width(k - 1));
}

void require_valid_config(const GaConfig& cfg) {
  if (cfg.population_size == 0) {
    throw ConfigError("population_size must be positive");
  }
  if (cfg.generations == 0) {
    throw ConfigError("generations must be positive");
  }
  if (cfg.k == 0) {
    throw ConfigError("k must be at least 1");
  }
  if (cfg.crossover_rate < 0.0 || cfg.crossover_rate > 1.0) {
    throw ConfigError("crossover_rate must lie in [0, 1]");
  }
  if (cfg.mutation_rate < 0.0 || cfg.mutation_rate > 1.0) {
    throw ConfigError("mutation_rate must lie in [0, 1]");
  }
  if (cfg.tournament_size == 0 || cfg.tournament_size > cfg.population_size) {
    throw ConfigError("tournament_size must lie in [1, population_size]");
  }
  if (cfg.elite_count >= cfg.population_size) {
    throw ConfigError("elite_count must be smaller than population_size");
  }
}

}  // namespace

std::size_t chromosome_length(std::size_t point_count, std::uint32_t k) {
  if (point_count == 0) {
    throw InvalidInputError("chromosome_length requires at least one point");
  }
  if (k == 0) {
    throw InvalidInputError("chromosome_length requires k >= 1");
  }
  return point_count * bits_per_label(k);
}

Assignment decode(const Chromosome& c, std::size_t point_count, std::uint32_t k) {
  const std::size_t expected = chromosome_length(point_count, k);
  if (c.bits.size() != expected) {
    throw InvalidInputError("chromosome has " + std::to_string(c.bits.size()) +
                            " bits, expected " + std::to_string(expected));
  }

  const std::uint32_t width = bits_per_label(k);
  Assignment a;
  a.k = k;
  a.labels.resize(point_count);
  for (std::size_t j = 0; j < point_count; ++j) {
    std::uint32_t value = 0;
    for (std::uint32_t t = 0; t < width; ++t) {
      value = (value << 1) | c.bits[j * width + t];
    }
    // Codes >= k wrap around so every bit pattern stays decodable.
    a.labels[j] = value % k;
  }
  return a;
}

Chromosome encode(const Assignment& a) {
  if (a.k == 0) {
    throw InvalidInputError("encode requires k >= 1");
  }
  const std::uint32_t width = bits_per_label(a.k);
  Chromosome c;
  c.bits.resize(a.labels.size() * width);
  for (std::size_t j = 0; j < a.labels.size(); ++j) {
    const std::uint32_t label = a.labels[j];
    if (label >= a.k) {
      throw InvalidInputError("label " + std::to_string(label) + " out of range for k = " +
                              std::to_string(a.k));
    }
    for (std::uint32_t t = 0; t < width; ++t) {
      c.bits[j * width + t] = (label >> (width - 1 - t)) & 1u;
    }
  }
  return c;
}

std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& a, const Chromosome& b,
                                                      std::size_t cut) {
  if (a.bits.size() != b.bits.size()) {
    throw InvalidInputError("crossover parents must have equal length");
  }
  const std::size_t length = a.bits.size();
  if (length < 2) {
    throw InvalidInputError("crossover requires chromosomes of length >= 2");
  }
  if (cut < 1 || cut > length - 1) {
    throw InvalidInputError("crossover cut must lie in [1, length - 1]");
  }

  Chromosome first = a;
  Chromosome second = b;
  for (std::size_t i = cut; i < length; ++i) {
    std::swap(first.bits[i], second.bits[i]);
  }
  return {std::move(first), std::move(second)};
}

Chromosome mutate(const Chromosome& c, double rate, MutationMode mode, Rng& rng) {
  if (rate < 0.0 || rate > 1.0) {
    throw InvalidInputError("mutation rate must lie in [0, 1]");
  }
  Chromosome out = c;
  if (out.bits.empty()) {
    return out;
  }
  switch (mode) {
    case MutationMode::chromosome:
      if (rng.next_event(rate)) {
        const std::size_t position = rng.next_below(out.bits.size());
        out.bits[position] ^= 1u;
      }
      break;
    case MutationMode::bit:
      for (std::uint8_t& bit : out.bits) {
        if (rng.next_event(rate)) {
          bit ^= 1u;
        }
      }
      break;
  }
  return out;
}

std::size_t tournament_select(std::span<const double> fitnesses, std::uint32_t size, Rng& rng) {
  if (fitnesses.empty()) {
    throw InvalidInputError("tournament over an empty population");
  }
  if (size == 0) {
    throw InvalidInputError("tournament size must be at least 1");
  }
  std::size_t best = fitnesses.size();
  for (std::uint32_t t = 0; t < size; ++t) {
    const std::size_t draw = rng.next_below(fitnesses.size());
    if (best == fitnesses.size() || fitnesses[draw] < fitnesses[best] ||
        (fitnesses[draw] == fitnesses[best] && draw < best)) {
      best = draw;
    }
  }
  return best;
}

GaResult run_ga(std::span<const ColourPoint> points, const GaConfig& cfg) {
  if (points.empty()) {
    throw InvalidInputError("run_ga requires a non-empty point list");
  }
  require_valid_config(cfg);

  const std::size_t n = points.size();
  const std::uint32_t k = cfg.k;
  const std::size_t length = chromosome_length(n, k);
  const std::uint32_t width = bits_per_label(k);

  Rng rng(cfg.seed);

  // All stochastic draws happen in one fixed serial order: population
  // initialization bit by bit, then per generation the selection, crossover
  // and mutation draws for each offspring in turn. Fitness evaluation draws
  // nothing, so it cannot perturb the stream.
  std::vector<Chromosome> population(cfg.population_size);
  for (Chromosome& c : population) {
    c.bits.resize(length);
    for (std::uint8_t& bit : c.bits) {
      bit = static_cast<std::uint8_t>(rng.next_below(2));
    }
  }

  GaResult result;
  result.trace.reserve(cfg.generations + 1);

  std::vector<double> fitness(cfg.population_size);
  Chromosome best_chromosome;
  double best_j = 0.0;
  bool have_best = false;

  const auto evaluate_generation = [&](std::uint32_t generation) {
    double gen_best = 0.0;
    double gen_sum = 0.0;
    for (std::size_t i = 0; i < population.size(); ++i) {
      fitness[i] = objective_j(points, decode(population[i], n, k)).j;
      gen_sum += fitness[i];
      if (i == 0 || fitness[i] < gen_best) {
        gen_best = fitness[i];
      }
      if (!have_best || fitness[i] < best_j) {
        best_j = fitness[i];
        best_chromosome = population[i];
        have_best = true;
      }
    }
    result.evaluations += population.size();
    result.trace.push_back(TraceRecord{generation, best_j, gen_best,
                                       gen_sum / static_cast<double>(population.size())});
  };

  evaluate_generation(0);

  std::vector<std::size_t> order(cfg.population_size);
  std::vector<Chromosome> next;
  next.reserve(cfg.population_size);

  for (std::uint32_t generation = 1; generation <= cfg.generations; ++generation) {
    // Elites: the lowest-J individuals, ties resolved to the lowest index.
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });
    next.clear();
    for (std::uint32_t e = 0; e < cfg.elite_count; ++e) {
      next.push_back(population[order[e]]);
    }

    while (next.size() < cfg.population_size) {
      const std::size_t p1 = tournament_select(fitness, cfg.tournament_size, rng);
      const std::size_t p2 = tournament_select(fitness, cfg.tournament_size, rng);
      Chromosome c1 = population[p1];
      Chromosome c2 = population[p2];

      const bool can_cut =
          length >= 2 && (cfg.crossover_cut == CrossoverCut::bit || n >= 2);
      if (can_cut && rng.next_event(cfg.crossover_rate)) {
        const std::size_t cut = cfg.crossover_cut == CrossoverCut::bit
                                    ? 1 + rng.next_below(length - 1)
                                    : width * (1 + rng.next_below(n - 1));
        std::tie(c1, c2) = one_point_crossover(c1, c2, cut);
      }

      next.push_back(mutate(c1, cfg.mutation_rate, cfg.mutation_mode, rng));
      if (next.size() < cfg.population_size) {
        next.push_back(mutate(c2, cfg.mutation_rate, cfg.mutation_mode, rng));
      }
    }

    population.swap(next);
    evaluate_generation(generation);
  }

  result.best_assignment = decode(best_chromosome, n, k);
  result.best_j = best_j;
  return result;
}

}  // namespace ccseg
