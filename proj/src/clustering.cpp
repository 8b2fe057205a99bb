#include "ccseg/clustering.hpp"

#include <cstddef>
#include <limits>
#include <string>

#include "ccseg/errors.hpp"
#include "ccseg/rng.hpp"

namespace ccseg {

namespace {

void require_matching(std::span<const ColourPoint> points, const Assignment& a) {
  if (a.labels.size() != points.size()) {
    throw InvalidInputError("assignment has " + std::to_string(a.labels.size()) +
                            " labels for " + std::to_string(points.size()) + " points");
  }
  if (a.k == 0) {
    throw InvalidInputError("assignment must have at least one cluster");
  }
  for (std::uint32_t label : a.labels) {
    if (label >= a.k) {
      throw InvalidInputError("cluster label " + std::to_string(label) +
                              " out of range for k = " + std::to_string(a.k));
    }
  }
}

}  // namespace

ClusterModel weighted_centroids(std::span<const ColourPoint> points, const Assignment& a) {
  require_matching(points, a);

  std::vector<Rgbd> sums(a.k);
  std::vector<std::uint64_t> weights(a.k, 0);
  for (std::size_t j = 0; j < points.size(); ++j) {
    const ColourPoint& p = points[j];
    const std::uint32_t i = a.labels[j];
    sums[i] += p.coord * static_cast<double>(p.freq);
    weights[i] += p.freq;
  }

  ClusterModel model;
  model.centroids.resize(a.k);
  model.weights = std::move(weights);
  for (std::uint32_t i = 0; i < a.k; ++i) {
    if (model.weights[i] > 0) {
      model.centroids[i] = sums[i] / static_cast<double>(model.weights[i]);
    }
  }
  return model;
}

ObjectiveReport objective_j(std::span<const ColourPoint> points, const Assignment& a) {
  const ClusterModel model = weighted_centroids(points, a);

  ObjectiveReport report;
  report.per_cluster.assign(a.k, 0.0);
  for (std::size_t j = 0; j < points.size(); ++j) {
    const ColourPoint& p = points[j];
    const std::uint32_t i = a.labels[j];
    report.per_cluster[i] +=
        static_cast<double>(p.freq) * squared_distance(p.coord, *model.centroids[i]);
  }
  for (double c : report.per_cluster) {
    report.j += c;
  }
  return report;
}

namespace {

// Nearest present centroid; ties go to the lowest cluster index.
std::uint32_t nearest_centroid(const Rgbd& coord, const ClusterModel& model) {
  std::uint32_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 0; i < model.centroids.size(); ++i) {
    if (!model.centroids[i]) {
      continue;
    }
    const double d = squared_distance(coord, *model.centroids[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

// k distinct point indices, drawn without replacement with probability
// proportional to frequency. Exact integer arithmetic throughout.
std::vector<std::size_t> sample_distinct_points(std::span<const ColourPoint> points,
                                                std::uint32_t k, Rng& rng) {
  std::uint64_t remaining_weight = 0;
  for (const ColourPoint& p : points) {
    remaining_weight += p.freq;
  }
  std::vector<bool> taken(points.size(), false);
  std::vector<std::size_t> picks;
  picks.reserve(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    std::uint64_t r = rng.next_below(remaining_weight);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (taken[j]) {
        continue;
      }
      if (r < points[j].freq) {
        taken[j] = true;
        picks.push_back(j);
        remaining_weight -= points[j].freq;
        break;
      }
      r -= points[j].freq;
    }
  }
  return picks;
}

}  // namespace

LloydResult lloyd(std::span<const ColourPoint> points, std::uint32_t k, std::uint64_t seed,
                  int max_iter) {
  if (k == 0) {
    throw InvalidInputError("lloyd requires k >= 1");
  }
  if (k > points.size()) {
    throw InvalidInputError("lloyd requires k <= point count (" + std::to_string(k) + " > " +
                            std::to_string(points.size()) + ")");
  }
  if (max_iter < 1) {
    throw InvalidInputError("lloyd requires max_iter >= 1");
  }

  Rng rng(seed);
  ClusterModel model;
  model.centroids.resize(k);
  model.weights.assign(k, 0);
  const std::vector<std::size_t> picks = sample_distinct_points(points, k, rng);
  for (std::uint32_t i = 0; i < k; ++i) {
    model.centroids[i] = points[picks[i]].coord;
  }

  Assignment a;
  a.k = k;
  a.labels.resize(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    a.labels[j] = nearest_centroid(points[j].coord, model);
  }

  LloydResult result;
  result.iteration_j.push_back(objective_j(points, a).j);

  std::vector<std::uint32_t> next(points.size());
  for (int iter = 1; iter <= max_iter; ++iter) {
    model = weighted_centroids(points, a);
    for (std::size_t j = 0; j < points.size(); ++j) {
      next[j] = nearest_centroid(points[j].coord, model);
    }
    result.iterations = iter;
    if (next == a.labels) {
      break;
    }
    a.labels = next;
    result.iteration_j.push_back(objective_j(points, a).j);
  }

  result.model = weighted_centroids(points, a);
  result.objective = objective_j(points, a);
  result.assignment = std::move(a);
  return result;
}

BruteForceResult brute_force_optimum(std::span<const ColourPoint> points, std::uint32_t k,
                                     std::uint64_t budget) {
  const std::size_t n = points.size();
  if (n == 0) {
    throw InvalidInputError("brute_force_optimum requires at least one point");
  }
  if (k == 0) {
    throw InvalidInputError("brute_force_optimum requires k >= 1");
  }

  std::uint64_t total = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (total > budget / k) {
      throw BudgetExceededError("k^n = " + std::to_string(k) + "^" + std::to_string(n) +
                                " assignments exceed the enumeration budget of " +
                                std::to_string(budget));
    }
    total *= k;
  }

  // Per-point contributions, precomputed once. J of an assignment is then
  // sum over non-empty clusters of (sum f|x|^2 - |sum fx|^2 / sum f), which
  // equals the weighted squared deviation from the cluster's weighted mean.
  std::vector<double> f(n), fsq(n);
  std::vector<Rgbd> fx(n);
  for (std::size_t j = 0; j < n; ++j) {
    f[j] = static_cast<double>(points[j].freq);
    fx[j] = points[j].coord * f[j];
    fsq[j] = f[j] * squared_norm(points[j].coord);
  }

  std::vector<std::uint32_t> labels(n, 0);
  std::vector<std::uint32_t> best_labels = labels;
  double best_j = std::numeric_limits<double>::infinity();

  // Scratch accumulators, reset per assignment via the touched list so the
  // cost per assignment stays O(n) even for large k.
  std::vector<double> acc_f(k, 0.0), acc_fsq(k, 0.0);
  std::vector<Rgbd> acc_fx(k);
  std::vector<std::uint8_t> touched(k, 0);
  std::vector<std::uint32_t> touched_list;
  touched_list.reserve(n);

  std::uint64_t enumerated = 0;
  while (true) {
    touched_list.clear();
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint32_t c = labels[j];
      if (!touched[c]) {
        touched[c] = 1;
        touched_list.push_back(c);
        acc_f[c] = 0.0;
        acc_fsq[c] = 0.0;
        acc_fx[c] = Rgbd{};
      }
      acc_f[c] += f[j];
      acc_fsq[c] += fsq[j];
      acc_fx[c] += fx[j];
    }
    double j_value = 0.0;
    for (const std::uint32_t c : touched_list) {
      j_value += acc_fsq[c] - squared_norm(acc_fx[c]) / acc_f[c];
      touched[c] = 0;
    }
    ++enumerated;

    // Strict improvement keeps the first optimum found; lexicographic
    // enumeration order makes that the lexicographically smallest one.
    if (j_value < best_j) {
      best_j = j_value;
      best_labels = labels;
    }

    std::size_t pos = n;
    while (pos > 0 && labels[pos - 1] == k - 1) {
      labels[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) {
      break;
    }
    ++labels[pos - 1];
  }

  BruteForceResult result;
  result.assignment = Assignment{std::move(best_labels), k};
  result.objective = objective_j(points, result.assignment);
  result.enumerated = enumerated;
  return result;
}

}  // namespace ccseg
