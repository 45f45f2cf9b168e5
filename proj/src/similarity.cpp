#include "metasc/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "metasc/error.hpp"

namespace metasc {

namespace {

void check_table(const FeatureTable& ft) {
  if (ft.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 feature rows");
  if (ft.dim() < 1) throw Error(ErrorCode::InvalidArgument, "feature rows need dimension >= 1");
  if (!ft.rows.allFinite()) throw Error(ErrorCode::InvalidArgument, "feature rows contain non-finite entries");
}

double gaussian(double dist_sq, double sigma) { return std::exp(-dist_sq / (2.0 * sigma * sigma)); }

}  // namespace

WeightedGraph gaussian_graph(const FeatureTable& ft, const GaussianOptions& opts) {
  check_table(ft);
  if (!(opts.sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
  if (!(opts.weight_floor >= 0.0)) throw Error(ErrorCode::InvalidArgument, "weight floor must be >= 0");
  const std::size_t n = ft.size();
  const std::size_t pairs = n * (n - 1) / 2;
  if (opts.weight_floor == 0.0 && pairs > opts.max_dense_pairs) {
    throw Error(ErrorCode::TooLarge, std::to_string(pairs) + " pairs exceed the complete-graph cap of " +
                                         std::to_string(opts.max_dense_pairs) + "; set a weight floor");
  }
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const double d2 = (ft.rows.row(static_cast<Eigen::Index>(u)) - ft.rows.row(static_cast<Eigen::Index>(v))).squaredNorm();
      const double w = gaussian(d2, opts.sigma);
      if (w > opts.weight_floor) edges.push_back({u, v, w});
    }
  }
  return WeightedGraph(n, edges);
}

std::vector<std::size_t> nearest_neighbours(const Eigen::MatrixXd& rows, std::size_t u, std::size_t k) {
  const auto n = static_cast<std::size_t>(rows.rows());
  if (u >= n) throw Error(ErrorCode::VertexOutOfRange, "row " + std::to_string(u) + " out of range");
  if (k >= n) throw Error(ErrorCode::InvalidArgument, "need k < n nearest neighbours");
  std::vector<std::pair<double, std::size_t>> cand;
  cand.reserve(n - 1);
  for (std::size_t v = 0; v < n; ++v) {
    if (v == u) continue;
    cand.emplace_back((rows.row(static_cast<Eigen::Index>(u)) - rows.row(static_cast<Eigen::Index>(v))).squaredNorm(), v);
  }
  // (distance, id) ordering breaks distance ties toward the lower id
  std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
  std::vector<std::size_t> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = cand[i].second;
  return out;
}

WeightedGraph knn_graph(const FeatureTable& ft, std::size_t k_neighbours, const KnnOptions& opts) {
  check_table(ft);
  const std::size_t n = ft.size();
  if (k_neighbours < 1 || k_neighbours >= n) {
    throw Error(ErrorCode::InvalidArgument, "need 1 <= k_neighbours < n, got " + std::to_string(k_neighbours));
  }
  if (opts.weighting == KnnWeighting::Gaussian && !(opts.sigma > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
  }
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v : nearest_neighbours(ft.rows, u, k_neighbours)) pairs.emplace(std::min(u, v), std::max(u, v));
  }
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs) {
    double w = 1.0;
    if (opts.weighting == KnnWeighting::Gaussian) {
      w = gaussian((ft.rows.row(static_cast<Eigen::Index>(u)) - ft.rows.row(static_cast<Eigen::Index>(v))).squaredNorm(),
                   opts.sigma);
      // a very distant neighbour can underflow to 0; keep the kNN edge
      w = std::max(w, std::numeric_limits<double>::min());
    }
    edges.push_back({u, v, w});
  }
  return WeightedGraph(n, edges);
}

}  // namespace metasc
