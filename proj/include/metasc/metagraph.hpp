#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "metasc/clustering.hpp"
#include "metasc/eigensolver.hpp"
#include "metasc/ext_real.hpp"
#include "metasc/graph.hpp"

namespace metasc {

/// Cluster-level graph of a partition: off-diagonal entries are crossing
/// weights w(S_i, S_j); the diagonal is 2 w(S_i, S_i), so row sums equal
/// cluster volumes.
class MetaGraph {
 public:
  /// Takes an explicit k x k adjacency (symmetric, non-negative, positive row sums).
  explicit MetaGraph(Eigen::MatrixXd adjacency);

  std::size_t k() const { return static_cast<std::size_t>(adjacency_.rows()); }
  const Eigen::MatrixXd& adjacency() const { return adjacency_; }
  const Eigen::VectorXd& degrees() const { return degrees_; }

  /// I - D^{-1/2} A D^{-1/2}.
  Eigen::MatrixXd normalized_laplacian() const;

 private:
  Eigen::MatrixXd adjacency_;
  Eigen::VectorXd degrees_;
};

MetaGraph build_meta_graph(const WeightedGraph& g, const Clustering& clustering);

/// Meta-graph of a plain unit-weight template (no self-loops).
MetaGraph meta_graph_from_edges(std::size_t k, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

/// Bottom l eigenpairs (gamma_i, g_i) of the meta Laplacian and the rows
/// x^(i) = (g_1(i), ..., g_l(i)).
struct MetaEmbedding {
  std::size_t l = 0;
  Eigen::VectorXd gamma;   // l
  Eigen::MatrixXd vectors; // k x l, column i = g_i
  /// Row i is x^(i); same storage as `vectors`.
  const Eigen::MatrixXd& points() const { return vectors; }
};

/// All k eigenpairs of the meta Laplacian are computed densely; the first l are kept.
MetaEmbedding meta_embedding(const MetaGraph& m, std::size_t l);

struct Distinguishability {
  double min_norm_sq;            // min_i ||x^(i)||^2
  double min_normalized_sep_sq;  // min_{i != j} || x^(i)/||x^(i)|| - x^(j)/||x^(j)|| ||^2
  double theta;                  // min of the two
};

/// Throws ZeroEmbeddingNorm if some x^(i) vanishes; requires k >= 2.
Distinguishability distinguishability_theta(const MetaEmbedding& me);

struct UpsilonReport {
  double lambda_next;                  // lambda_{k+1}(N_G)
  double max_conductance;              // max_i Phi(S_i) of the supplied partition
  ExtReal surrogate;                   // lambda_{k+1} / max_i Phi(S_i)
  std::optional<double> exact_rho;     // brute-force rho(k) when n is small enough
  std::optional<ExtReal> exact;        // lambda_{k+1} / rho(k)
};

/// lambda_{k+1} / rho(k) using the supplied partition's worst conductance in
/// place of rho(k); infinite when every cluster has zero conductance.
UpsilonReport upsilon(const WeightedGraph& g, const Clustering& clustering, const EigenOptions& opts = {});

/// Same, reusing precomputed eigenvalues of N_G (at least k + 1 of them).
UpsilonReport upsilon(const WeightedGraph& g, const Clustering& clustering, const Eigen::VectorXd& lambdas);

/// Sum_{i <= l} gamma_i / lambda_{l+1}. Throws ZeroDenominator if lambda_{l+1} <= 1e-12.
double psi(const WeightedGraph& g, const Clustering& clustering, std::size_t l, const EigenOptions& opts = {});

/// Same, reusing precomputed values.
double psi(const Eigen::VectorXd& gamma, const Eigen::VectorXd& lambdas, std::size_t l);

}  // namespace metasc
