#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

#include "metasc/clustering.hpp"
#include "metasc/eigensolver.hpp"
#include "metasc/graph.hpp"
#include "metasc/kmeans.hpp"

namespace metasc {

/// Vertices mapped to F(u) = (f_1(u), ..., f_l(u)) / sqrt(deg(u)).
struct SpectralEmbedding {
  std::size_t l = 0;
  EigenPairs eigen;
  Eigen::MatrixXd points;  // n x l (n x (l-1) when the trivial vector is dropped)
  bool dropped_trivial = false;
};

struct EmbedOptions {
  EigenOptions eigen;
  /// Leave f_1 out of the point coordinates (the eigenpair is still computed).
  bool drop_trivial = false;
};

SpectralEmbedding spectral_embed(const WeightedGraph& g, std::size_t l, const EmbedOptions& opts = {});

/// Point coordinates from already computed eigenvectors.
Eigen::MatrixXd embed_points(const WeightedGraph& g, const Eigen::MatrixXd& vectors);

struct ClusterOptions {
  KMeansOptions kmeans;
  EmbedOptions embed;
  /// Use deg(u) as k-means weight; unit weights otherwise.
  bool degree_weighted = true;
};

/// Spectral clustering into k groups using the bottom l eigenvectors.
Clustering spectral_cluster(const WeightedGraph& g, std::size_t k, std::size_t l, const ClusterOptions& opts,
                            std::uint64_t seed);

/// Same as spectral_cluster on a precomputed embedding.
Clustering cluster_embedding(const WeightedGraph& g, const SpectralEmbedding& emb, std::size_t k,
                             const ClusterOptions& opts, std::uint64_t seed);

/// Embedding points with their k-means weights.
PointSet embedding_point_set(const WeightedGraph& g, const Eigen::MatrixXd& points, bool degree_weighted);

}  // namespace metasc
