#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "metasc/clustering.hpp"
#include "metasc/graph.hpp"

namespace metasc {

enum class MatchObjective {
  MaxOverlapCount,
  MinSymdiffVolume,
};

struct MatchResult {
  /// sigma[i] = truth cluster matched to output cluster i.
  std::vector<std::size_t> sigma;
  /// overlap[i] = |A_i ∩ S_sigma(i)|.
  std::vector<std::size_t> overlap;
  /// Total matched overlap count, or total symmetric-difference volume.
  double objective = 0.0;
};

/// Optimal max-weight assignment on a square weight matrix via the Hungarian
/// method. Among optimal assignments returns the lexicographically smallest
/// one. `tie_tol` decides which reduced costs count as tight.
std::vector<std::size_t> max_weight_assignment(const Eigen::MatrixXd& weights, double tie_tol = 1e-9);

/// confusion(i, j) = |A_i ∩ S_j|.
Eigen::MatrixXd confusion_counts(const Clustering& output, const Clustering& truth);

/// confusion(i, j) = vol(A_i ∩ S_j).
Eigen::MatrixXd confusion_volumes(const Clustering& output, const Clustering& truth, const WeightedGraph& g);

/// Throws KMismatch unless both clusterings have the same k and size.
/// `g` is only read for the volume objective.
MatchResult optimal_match(const Clustering& output, const Clustering& truth, const WeightedGraph* g,
                          MatchObjective objective);

struct AccuracyResult {
  double accuracy;
  /// Ground-truth clusters differ in size; the score is normalized by the total vertex count.
  bool unequal_sizes;
};

/// Fraction of vertices in matched cluster pairs under the max-overlap matching.
AccuracyResult accuracy(const Clustering& output, const Clustering& truth);

/// sum_i vol(A_i △ S_sigma(i)) under the min-symmetric-difference matching.
double symdiff_volume(const Clustering& output, const Clustering& truth, const WeightedGraph& g);

/// sum_i vol(A_i △ S_sigma(i)) for a fixed matching.
double symdiff_volume_for(const Clustering& output, const Clustering& truth, const WeightedGraph& g,
                          const std::vector<std::size_t>& sigma);

enum class NmiNormalization { Arithmetic, Max };

struct PairIndices {
  double rand;
  double ari;
  double nmi;
};

/// Rand index, adjusted Rand index and normalized mutual information. The two
/// clusterings must cover the same vertices but may have different k.
PairIndices pair_indices(const Clustering& a, const Clustering& b,
                         NmiNormalization norm = NmiNormalization::Arithmetic);

}  // namespace metasc
