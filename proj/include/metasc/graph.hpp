#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "metasc/clustering.hpp"
#include "metasc/operator.hpp"

namespace metasc {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double w = 1.0;
};

/// Largest n for which dense matrices are materialized.
inline constexpr std::size_t kMaxDenseVertices = 4096;

/// Largest n accepted by the exhaustive k-way expansion.
inline constexpr std::size_t kMaxBruteForceVertices = 14;

/// Immutable undirected weighted simple graph.
///
/// Stored edges have strictly positive weight, u < v, and no duplicates.
/// Every vertex has positive degree. Adjacency is kept in CSR form.
class WeightedGraph {
 public:
  struct Neighbor {
    std::size_t v;
    double w;
  };

  /// Builds from an edge list over vertices 0..n-1. Zero-weight edges are
  /// dropped; negative weights, self-loops, duplicate pairs, out-of-range
  /// endpoints and isolated vertices are rejected.
  WeightedGraph(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const { return degree_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  /// Canonical edges (u < v), sorted.
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Neighbor> neighbors(std::size_t u) const {
    return {adj_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
  }

  double degree(std::size_t u) const { return degree_[u]; }
  std::span<const double> degrees() const { return degree_; }
  double total_volume() const { return total_volume_; }

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adj_;
  std::vector<double> degree_;
  double total_volume_ = 0.0;
};

/// Builds a graph with n inferred as max vertex id + 1.
WeightedGraph build_graph(std::span<const Edge> edges);

/// Membership mask over the vertex set of a graph.
class VertexSet {
 public:
  explicit VertexSet(std::size_t n) : member_(n, 0) {}
  VertexSet(std::size_t n, std::span<const std::size_t> vertices);

  std::size_t universe() const { return member_.size(); }
  std::size_t count() const;
  bool contains(std::size_t u) const { return member_[u] != 0; }
  void insert(std::size_t u) { member_[u] = 1; }

 private:
  std::vector<char> member_;
};

double volume(const WeightedGraph& g, const VertexSet& s);

/// Total weight of edges with exactly one endpoint in S.
double cut_weight(const WeightedGraph& g, const VertexSet& s);

/// Total weight of edges with both endpoints in S.
double internal_weight(const WeightedGraph& g, const VertexSet& s);

/// w(S, V \ S) / vol(S). S must be non-empty and proper.
double conductance(const WeightedGraph& g, const VertexSet& s);

/// Per-cluster conductance of a partition.
std::vector<double> cluster_conductances(const WeightedGraph& g, const Clustering& c);

/// Per-cluster volume of a partition.
std::vector<double> cluster_volumes(const WeightedGraph& g, const Clustering& c);

struct KWayExpansion {
  double rho;
  Clustering partition;
};

/// Exact rho(k) by enumerating every partition into k non-empty blocks.
/// Ties resolve to the first partition in restricted-growth order.
KWayExpansion k_way_expansion_bruteforce(const WeightedGraph& g, std::size_t k);

/// N = I - D^{-1/2} A D^{-1/2} as a matrix-free operator over a graph.
class NormalizedLaplacian final : public SymmetricOperator {
 public:
  explicit NormalizedLaplacian(const WeightedGraph& g);

  std::size_t size() const override { return inv_sqrt_degree_.size(); }
  void apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const override;
  std::optional<Eigen::MatrixXd> dense() const override;

  /// x^T N x.
  double quadratic_form(const Eigen::VectorXd& x) const;

 private:
  const WeightedGraph* graph_;
  Eigen::VectorXd inv_sqrt_degree_;
};

NormalizedLaplacian normalized_laplacian(const WeightedGraph& g);

}  // namespace metasc
