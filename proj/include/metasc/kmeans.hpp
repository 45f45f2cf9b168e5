#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "metasc/clustering.hpp"

namespace metasc {

/// Rows of `points` with one positive weight per row.
struct PointSet {
  Eigen::MatrixXd points;   // n x d
  Eigen::VectorXd weights;  // n, all > 0

  PointSet(Eigen::MatrixXd pts, Eigen::VectorXd w);

  /// Unit weights.
  static PointSet unweighted(Eigen::MatrixXd pts);

  std::size_t size() const { return static_cast<std::size_t>(points.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(points.cols()); }
};

struct KMeansOptions {
  std::size_t restarts = 10;
  std::size_t max_iters = 300;
  /// Worker threads for restarts; 0 means hardware concurrency.
  std::size_t threads = 0;
};

struct KMeansResult {
  Eigen::MatrixXd centers;  // k x d
  std::vector<std::size_t> assignment;
  double cost = 0.0;
  /// Winning run's diagnostics: cost right after seeding, then after every
  /// Lloyd assignment step.
  double seeding_cost = 0.0;
  std::vector<double> cost_trace;
  std::size_t best_restart = 0;
};

/// Weighted k-means: k-means++ seeding followed by Lloyd iterations, best of
/// `restarts` independent runs. Deterministic for a fixed seed regardless of
/// thread count.
KMeansResult kmeans(const PointSet& ps, std::size_t k, const KMeansOptions& opts, std::uint64_t seed);

/// Weighted k-means cost of `clustering` with centers at the weighted centroids.
double kmeans_cost(const PointSet& ps, const Clustering& clustering);

/// Weighted centroids of the clusters (k x d).
Eigen::MatrixXd weighted_centroids(const PointSet& ps, const Clustering& clustering);

/// Sum_u w(u) ||x_u - c_{label(u)}||^2 for explicit centers.
double assignment_cost(const PointSet& ps, const Eigen::MatrixXd& centers,
                       const std::vector<std::size_t>& assignment);

}  // namespace metasc
