#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ccseg/colour.hpp"
#include "ccseg/colour_cube.hpp"

namespace ccseg {

/// Cluster labels for a point list, one label in [0, k) per point. This is
/// the dense form of the binary membership matrix: point j belongs to cluster
/// labels[j] and to no other.
struct Assignment {
  std::vector<std::uint32_t> labels;
  std::uint32_t k = 1;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Frequency-weighted centroids. A cluster with no members has an absent
/// centroid and weight 0.
struct ClusterModel {
  std::vector<std::optional<Rgbd>> centroids;
  std::vector<std::uint64_t> weights;
};

/// Value of the frequency-weighted within-cluster squared-deviation
/// objective, with its per-cluster breakdown.
struct ObjectiveReport {
  double j = 0.0;
  std::vector<double> per_cluster;
};

/// Centroid of each cluster as the frequency-weighted mean of its members'
/// coordinates, the unique minimizer of the weighted objective for a fixed
/// assignment. With all frequencies 1 this is the plain mean.
ClusterModel weighted_centroids(std::span<const ColourPoint> points, const Assignment& a);

/// J = sum over points of freq * squared distance to the centroid of the
/// point's cluster, centroids per weighted_centroids. Empty clusters
/// contribute 0.
ObjectiveReport objective_j(std::span<const ColourPoint> points, const Assignment& a);

struct LloydResult {
  Assignment assignment;
  ClusterModel model;
  ObjectiveReport objective;
  int iterations = 0;
  /// Objective after the initial assignment and after each iteration;
  /// non-increasing along the run.
  std::vector<double> iteration_j;
};

/// Classical alternating minimization, as the deterministic baseline.
/// Initial centroids are k distinct points drawn without replacement with
/// frequency-proportional probability; nearest-centroid ties break toward the
/// lowest cluster index. Stops when labels stabilize or after max_iter
/// iterations.
LloydResult lloyd(std::span<const ColourPoint> points, std::uint32_t k, std::uint64_t seed,
                  int max_iter = 100);

struct BruteForceResult {
  Assignment assignment;
  ObjectiveReport objective;
  std::uint64_t enumerated = 0;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Exhaustive enumeration of all k^n label vectors; the test oracle for the
/// heuristic searches. Ties go to the lexicographically smallest label
/// vector. Refuses (BudgetExceededError) when k^n exceeds the budget.
BruteForceResult brute_force_optimum(std::span<const ColourPoint> points, std::uint32_t k,
                                     std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace ccseg
