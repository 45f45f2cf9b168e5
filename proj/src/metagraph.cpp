#include "metasc/metagraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "metasc/error.hpp"

namespace metasc {

MetaGraph::MetaGraph(Eigen::MatrixXd adjacency) : adjacency_(std::move(adjacency)) {
  const Eigen::Index k = adjacency_.rows();
  if (k < 1 || adjacency_.cols() != k) throw Error(ErrorCode::InvalidArgument, "meta adjacency must be square, k >= 1");
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      if (!(adjacency_(i, j) >= 0.0) || !std::isfinite(adjacency_(i, j))) {
        throw Error(ErrorCode::NegativeWeight, "meta adjacency entry (" + std::to_string(i) + "," +
                                                   std::to_string(j) + ") is negative or non-finite");
      }
      if (adjacency_(i, j) != adjacency_(j, i)) {
        throw Error(ErrorCode::InvalidArgument, "meta adjacency is not symmetric");
      }
    }
  }
  degrees_ = adjacency_.rowwise().sum();
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!(degrees_(i) > 0.0)) throw Error(ErrorCode::IsolatedVertex, "meta vertex " + std::to_string(i) + " has degree 0");
  }
}

Eigen::MatrixXd MetaGraph::normalized_laplacian() const {
  const Eigen::VectorXd s = degrees_.cwiseSqrt().cwiseInverse();
  const Eigen::Index k = adjacency_.rows();
  Eigen::MatrixXd n = Eigen::MatrixXd::Identity(k, k) - s.asDiagonal() * adjacency_ * s.asDiagonal();
  return 0.5 * (n + n.transpose());
}

MetaGraph build_meta_graph(const WeightedGraph& g, const Clustering& clustering) {
  if (clustering.size() != g.num_vertices()) {
    throw Error(ErrorCode::InvalidArgument, "clustering size differs from graph");
  }
  const auto k = static_cast<Eigen::Index>(clustering.k());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, k);
  for (const Edge& e : g.edges()) {
    const auto i = static_cast<Eigen::Index>(clustering.label(e.u));
    const auto j = static_cast<Eigen::Index>(clustering.label(e.v));
    if (i == j) {
      a(i, i) += 2.0 * e.w;
    } else {
      a(i, j) += e.w;
      a(j, i) += e.w;
    }
  }
  MetaGraph m(std::move(a));
  const std::vector<double> vol = cluster_volumes(g, clustering);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double v = vol[static_cast<std::size_t>(i)];
    if (std::abs(m.degrees()(i) - v) > 1e-9 * v) {
      throw Error(ErrorCode::InvalidArgument, "meta degree of cluster " + std::to_string(i) + " differs from its volume");
    }
  }
  return m;
}

MetaGraph meta_graph_from_edges(std::size_t k, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  const auto ki = static_cast<Eigen::Index>(k);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(ki, ki);
  for (const auto& [i, j] : edges) {
    if (i >= k || j >= k) throw Error(ErrorCode::VertexOutOfRange, "template edge outside 0..k-1");
    if (i == j) throw Error(ErrorCode::SelfLoop, "template self-loop at " + std::to_string(i));
    const auto a_i = static_cast<Eigen::Index>(i);
    const auto a_j = static_cast<Eigen::Index>(j);
    if (a(a_i, a_j) != 0.0) throw Error(ErrorCode::DuplicateEdge, "template edge listed twice");
    a(a_i, a_j) = 1.0;
    a(a_j, a_i) = 1.0;
  }
  return MetaGraph(std::move(a));
}

MetaEmbedding meta_embedding(const MetaGraph& m, std::size_t l) {
  if (l < 1 || l > m.k()) throw Error(ErrorCode::BadL, "need 1 <= l <= k, got l=" + std::to_string(l));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.normalized_laplacian());
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "meta eigensolve failed");
  Eigen::MatrixXd all = es.eigenvectors();
  normalize_signs(all);
  MetaEmbedding me;
  me.l = l;
  me.gamma = es.eigenvalues().head(static_cast<Eigen::Index>(l));
  me.vectors = all.leftCols(static_cast<Eigen::Index>(l));
  return me;
}

Distinguishability distinguishability_theta(const MetaEmbedding& me) {
  const Eigen::MatrixXd& x = me.points();
  const Eigen::Index k = x.rows();
  if (k < 2) throw Error(ErrorCode::InvalidK, "distinguishability needs k >= 2");
  Eigen::VectorXd norm_sq = x.rowwise().squaredNorm();
  for (Eigen::Index i = 0; i < k; ++i) {
    if (norm_sq(i) <= 1e-24) {
      throw Error(ErrorCode::ZeroEmbeddingNorm,
                  "meta vertex " + std::to_string(i) + " has zero norm in the first " + std::to_string(me.l) +
                      " meta eigenvectors");
    }
  }
  Eigen::MatrixXd unit = norm_sq.cwiseSqrt().cwiseInverse().asDiagonal() * x;
  Distinguishability d{};
  d.min_norm_sq = norm_sq.minCoeff();
  d.min_normalized_sep_sq = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      d.min_normalized_sep_sq = std::min(d.min_normalized_sep_sq, (unit.row(i) - unit.row(j)).squaredNorm());
    }
  }
  d.theta = std::min(d.min_norm_sq, d.min_normalized_sep_sq);
  return d;
}

UpsilonReport upsilon(const WeightedGraph& g, const Clustering& clustering, const Eigen::VectorXd& lambdas) {
  const std::size_t k = clustering.k();
  if (k >= g.num_vertices()) throw Error(ErrorCode::InvalidK, "Upsilon needs k < n");
  if (static_cast<std::size_t>(lambdas.size()) < k + 1) {
    throw Error(ErrorCode::InvalidArgument, "Upsilon needs lambda_1..lambda_{k+1}");
  }
  UpsilonReport r;
  r.lambda_next = lambdas(static_cast<Eigen::Index>(k));
  const std::vector<double> phi = cluster_conductances(g, clustering);
  r.max_conductance = *std::max_element(phi.begin(), phi.end());
  r.surrogate = ExtReal::ratio(r.lambda_next, r.max_conductance);
  if (k >= 2 && g.num_vertices() <= kMaxBruteForceVertices) {
    r.exact_rho = k_way_expansion_bruteforce(g, k).rho;
    r.exact = ExtReal::ratio(r.lambda_next, *r.exact_rho);
  }
  return r;
}

UpsilonReport upsilon(const WeightedGraph& g, const Clustering& clustering, const EigenOptions& opts) {
  const std::size_t k = clustering.k();
  if (k >= g.num_vertices()) throw Error(ErrorCode::InvalidK, "Upsilon needs k < n");
  const NormalizedLaplacian lap(g);
  return upsilon(g, clustering, bottom_eigenpairs(lap, k + 1, opts).values);
}

double psi(const Eigen::VectorXd& gamma, const Eigen::VectorXd& lambdas, std::size_t l) {
  if (l < 1 || static_cast<std::size_t>(gamma.size()) < l || static_cast<std::size_t>(lambdas.size()) < l + 1) {
    throw Error(ErrorCode::BadL, "Psi(l) needs gamma_1..gamma_l and lambda_{l+1}");
  }
  const double den = lambdas(static_cast<Eigen::Index>(l));
  if (den <= 1e-12) throw Error(ErrorCode::ZeroDenominator, "lambda_{l+1} = " + format_real(den) + " <= 1e-12");
  return gamma.head(static_cast<Eigen::Index>(l)).sum() / den;
}

double psi(const WeightedGraph& g, const Clustering& clustering, std::size_t l, const EigenOptions& opts) {
  if (l >= g.num_vertices()) throw Error(ErrorCode::BadL, "Psi(l) needs l < n");
  const MetaEmbedding me = meta_embedding(build_meta_graph(g, clustering), l);
  const NormalizedLaplacian lap(g);
  return psi(me.gamma, bottom_eigenpairs(lap, l + 1, opts).values, l);
}

}  // namespace metasc
