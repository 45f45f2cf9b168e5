#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "metasc/graph.hpp"

namespace metasc {

/// n feature rows of fixed dimension, with an optional ground-truth label per row.
struct FeatureTable {
  Eigen::MatrixXd rows;  // n x d
  std::optional<std::vector<std::size_t>> labels;

  std::size_t size() const { return static_cast<std::size_t>(rows.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(rows.cols()); }
};

struct GaussianOptions {
  double sigma = 20.0;
  /// Pairs with weight <= floor are dropped; 0 keeps every pair.
  double weight_floor = 0.0;
  /// Complete graphs (floor 0) above this many pairs are refused.
  std::size_t max_dense_pairs = 50'000'000;
};

/// w_uv = exp(-||x_u - x_v||^2 / (2 sigma^2)) for every pair above the floor.
WeightedGraph gaussian_graph(const FeatureTable& ft, const GaussianOptions& opts = {});

enum class KnnWeighting { Unit, Gaussian };

struct KnnOptions {
  KnnWeighting weighting = KnnWeighting::Unit;
  double sigma = 20.0;  // used with Gaussian weighting
};

/// Union-symmetrized exact k-nearest-neighbour graph. Distance ties go to the
/// lower vertex id.
WeightedGraph knn_graph(const FeatureTable& ft, std::size_t k_neighbours, const KnnOptions& opts = {});

/// The k nearest other rows of row u, nearest first.
std::vector<std::size_t> nearest_neighbours(const Eigen::MatrixXd& rows, std::size_t u, std::size_t k);

}  // namespace metasc
