#include "metasc/pipeline.hpp"

#include <cmath>
#include <string>

#include "metasc/error.hpp"
#include "metasc/rng.hpp"

namespace metasc {

Eigen::MatrixXd embed_points(const WeightedGraph& g, const Eigen::MatrixXd& vectors) {
  if (static_cast<std::size_t>(vectors.rows()) != g.num_vertices()) {
    throw Error(ErrorCode::InvalidArgument, "eigenvector length differs from vertex count");
  }
  Eigen::VectorXd inv_sqrt(vectors.rows());
  for (Eigen::Index u = 0; u < vectors.rows(); ++u) inv_sqrt(u) = 1.0 / std::sqrt(g.degree(static_cast<std::size_t>(u)));
  return inv_sqrt.asDiagonal() * vectors;
}

SpectralEmbedding spectral_embed(const WeightedGraph& g, std::size_t l, const EmbedOptions& opts) {
  if (l < 1 || l > g.num_vertices()) {
    throw Error(ErrorCode::BadL, "need 1 <= l <= n, got l=" + std::to_string(l));
  }
  if (opts.drop_trivial && l < 2) throw Error(ErrorCode::BadL, "dropping f_1 leaves no coordinates for l=1");
  SpectralEmbedding emb;
  emb.l = l;
  const NormalizedLaplacian lap(g);
  emb.eigen = bottom_eigenpairs(lap, l, opts.eigen);
  emb.points = embed_points(g, emb.eigen.vectors);
  if (opts.drop_trivial) {
    emb.points = emb.points.rightCols(static_cast<Eigen::Index>(l - 1)).eval();
    emb.dropped_trivial = true;
  }
  return emb;
}

PointSet embedding_point_set(const WeightedGraph& g, const Eigen::MatrixXd& points, bool degree_weighted) {
  Eigen::VectorXd w = Eigen::VectorXd::Ones(points.rows());
  if (degree_weighted) {
    for (Eigen::Index u = 0; u < points.rows(); ++u) w(u) = g.degree(static_cast<std::size_t>(u));
  }
  return PointSet(points, std::move(w));
}

Clustering cluster_embedding(const WeightedGraph& g, const SpectralEmbedding& emb, std::size_t k,
                             const ClusterOptions& opts, std::uint64_t seed) {
  const std::size_t n = g.num_vertices();
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidK, "need 1 <= k <= n, got k=" + std::to_string(k));
  if (k == 1) return Clustering(1, std::vector<std::size_t>(n, 0));
  const PointSet ps = embedding_point_set(g, emb.points, opts.degree_weighted);
  KMeansResult km = kmeans(ps, k, opts.kmeans, derive_seed(seed, 1));
  return Clustering(k, std::move(km.assignment));
}

Clustering spectral_cluster(const WeightedGraph& g, std::size_t k, std::size_t l, const ClusterOptions& opts,
                            std::uint64_t seed) {
  const std::size_t n = g.num_vertices();
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidK, "need 1 <= k <= n, got k=" + std::to_string(k));
  if (l < 1 || l > k) throw Error(ErrorCode::BadL, "need 1 <= l <= k, got l=" + std::to_string(l));
  if (k == 1) return Clustering(1, std::vector<std::size_t>(n, 0));
  EmbedOptions embed = opts.embed;
  embed.eigen.seed = derive_seed(seed, 0);
  return cluster_embedding(g, spectral_embed(g, l, embed), k, opts, seed);
}

}  // namespace metasc
