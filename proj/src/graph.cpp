#include "metasc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "metasc/error.hpp"

namespace metasc {

WeightedGraph::WeightedGraph(std::size_t n, std::span<const Edge> edges) : degree_(n, 0.0) {
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw Error(ErrorCode::VertexOutOfRange, "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                                   ") outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
    }
    if (!(e.w >= 0.0) || !std::isfinite(e.w)) {
      throw Error(ErrorCode::NegativeWeight, "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                                 ") has weight " + std::to_string(e.w));
    }
    if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(e.u));
    edges_.push_back(e.u < e.v ? e : Edge{e.v, e.u, e.w});
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw Error(ErrorCode::DuplicateEdge,
                  "edge (" + std::to_string(edges_[i].u) + "," + std::to_string(edges_[i].v) + ") listed twice");
    }
  }
  std::erase_if(edges_, [](const Edge& e) { return e.w == 0.0; });

  std::vector<std::size_t> count(n + 1, 0);
  for (const Edge& e : edges_) {
    ++count[e.u + 1];
    ++count[e.v + 1];
    degree_[e.u] += e.w;
    degree_[e.v] += e.w;
  }
  for (std::size_t u = 0; u < n; ++u) {
    if (degree_[u] <= 0.0) throw Error(ErrorCode::IsolatedVertex, "vertex " + std::to_string(u) + " has degree 0");
    total_volume_ += degree_[u];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) offsets_[u + 1] = offsets_[u] + count[u + 1];
  adj_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adj_[fill[e.u]++] = {e.v, e.w};
    adj_[fill[e.v]++] = {e.u, e.w};
  }
  for (std::size_t u = 0; u < n; ++u) {
    std::sort(adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[u]),
              adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[u + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.v < b.v; });
  }
}

WeightedGraph build_graph(std::span<const Edge> edges) {
  std::size_t n = 0;
  for (const Edge& e : edges) n = std::max({n, e.u + 1, e.v + 1});
  return WeightedGraph(n, edges);
}

VertexSet::VertexSet(std::size_t n, std::span<const std::size_t> vertices) : member_(n, 0) {
  for (std::size_t u : vertices) {
    if (u >= n) throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(u) + " not in graph");
    member_[u] = 1;
  }
}

std::size_t VertexSet::count() const { return static_cast<std::size_t>(std::count(member_.begin(), member_.end(), 1)); }

namespace {

void check_universe(const WeightedGraph& g, const VertexSet& s) {
  if (s.universe() != g.num_vertices()) {
    throw Error(ErrorCode::InvalidArgument, "vertex set universe does not match graph size");
  }
}

}  // namespace

double volume(const WeightedGraph& g, const VertexSet& s) {
  check_universe(g, s);
  double vol = 0.0;
  for (std::size_t u = 0; u < g.num_vertices(); ++u) {
    if (s.contains(u)) vol += g.degree(u);
  }
  return vol;
}

double cut_weight(const WeightedGraph& g, const VertexSet& s) {
  check_universe(g, s);
  double cut = 0.0;
  for (const Edge& e : g.edges()) {
    if (s.contains(e.u) != s.contains(e.v)) cut += e.w;
  }
  return cut;
}

double internal_weight(const WeightedGraph& g, const VertexSet& s) {
  check_universe(g, s);
  double w = 0.0;
  for (const Edge& e : g.edges()) {
    if (s.contains(e.u) && s.contains(e.v)) w += e.w;
  }
  return w;
}

double conductance(const WeightedGraph& g, const VertexSet& s) {
  const std::size_t c = s.count();
  if (c == 0) throw Error(ErrorCode::EmptySet, "conductance of the empty set");
  if (c == g.num_vertices()) throw Error(ErrorCode::FullSet, "conductance of the whole vertex set");
  return cut_weight(g, s) / volume(g, s);
}

std::vector<double> cluster_volumes(const WeightedGraph& g, const Clustering& c) {
  if (c.size() != g.num_vertices()) throw Error(ErrorCode::InvalidArgument, "clustering size differs from graph");
  std::vector<double> vol(c.k(), 0.0);
  for (std::size_t u = 0; u < g.num_vertices(); ++u) vol[c.label(u)] += g.degree(u);
  return vol;
}

std::vector<double> cluster_conductances(const WeightedGraph& g, const Clustering& c) {
  std::vector<double> vol = cluster_volumes(g, c);
  std::vector<double> cut(c.k(), 0.0);
  for (const Edge& e : g.edges()) {
    const std::size_t a = c.label(e.u);
    const std::size_t b = c.label(e.v);
    if (a != b) {
      cut[a] += e.w;
      cut[b] += e.w;
    }
  }
  for (std::size_t i = 0; i < c.k(); ++i) cut[i] /= vol[i];
  return cut;
}

namespace {

// Restricted-growth enumeration of set partitions into exactly k blocks, with
// block volumes and cuts maintained incrementally.
class PartitionSearch {
 public:
  PartitionSearch(const WeightedGraph& g, std::size_t k)
      : g_(g), k_(k), n_(g.num_vertices()), block_(n_, 0), vol_(k, 0.0), cut_(k, 0.0) {}

  KWayExpansion run() {
    assign(0, 0);
    return {best_, Clustering(k_, best_labels_)};
  }

 private:
  void place(std::size_t u, std::size_t b, double sign) {
    vol_[b] += sign * g_.degree(u);
    for (const auto& nb : g_.neighbors(u)) {
      if (nb.v >= u) break;
      const std::size_t c = block_[nb.v];
      if (c != b) {
        cut_[b] += sign * nb.w;
        cut_[c] += sign * nb.w;
      }
    }
  }

  void assign(std::size_t u, std::size_t used) {
    if (u == n_) {
      if (used != k_) return;
      double worst = 0.0;
      for (std::size_t b = 0; b < k_; ++b) worst = std::max(worst, cut_[b] / vol_[b]);
      // The running sums drift; near-winners are rescored from scratch.
      if (worst <= best_ + 1e-9 * (1.0 + worst)) {
        const std::vector<double> phi = cluster_conductances(g_, Clustering(k_, block_));
        const double exact = *std::max_element(phi.begin(), phi.end());
        if (exact < best_) {
          best_ = exact;
          best_labels_ = block_;
        }
      }
      return;
    }
    // Enough vertices must remain to open the missing blocks.
    if (n_ - u < k_ - used) return;
    const std::size_t limit = std::min(used + 1, k_);
    for (std::size_t b = 0; b < limit; ++b) {
      block_[u] = b;
      place(u, b, 1.0);
      assign(u + 1, b == used ? used + 1 : used);
      place(u, b, -1.0);
    }
  }

  const WeightedGraph& g_;
  std::size_t k_;
  std::size_t n_;
  std::vector<std::size_t> block_;
  std::vector<double> vol_;
  std::vector<double> cut_;
  double best_ = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_labels_;
};

}  // namespace

KWayExpansion k_way_expansion_bruteforce(const WeightedGraph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  if (n > kMaxBruteForceVertices) {
    throw Error(ErrorCode::TooLarge, "brute-force k-way expansion limited to n <= " +
                                         std::to_string(kMaxBruteForceVertices) + ", got n=" + std::to_string(n));
  }
  if (k < 2 || k > n) throw Error(ErrorCode::InvalidK, "need 2 <= k <= n, got k=" + std::to_string(k));
  return PartitionSearch(g, k).run();
}

NormalizedLaplacian::NormalizedLaplacian(const WeightedGraph& g)
    : graph_(&g), inv_sqrt_degree_(static_cast<Eigen::Index>(g.num_vertices())) {
  for (std::size_t u = 0; u < g.num_vertices(); ++u) {
    inv_sqrt_degree_(static_cast<Eigen::Index>(u)) = 1.0 / std::sqrt(g.degree(u));
  }
}

void NormalizedLaplacian::apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const {
  const auto n = static_cast<Eigen::Index>(size());
  // y = x - D^{-1/2} A D^{-1/2} x, accumulated row by row.
  Eigen::MatrixXd scaled = inv_sqrt_degree_.asDiagonal() * x;
  y.resize(n, x.cols());
  Eigen::RowVectorXd acc(x.cols());
  for (Eigen::Index u = 0; u < n; ++u) {
    acc.setZero();
    for (const auto& nb : graph_->neighbors(static_cast<std::size_t>(u))) {
      acc.noalias() += nb.w * scaled.row(static_cast<Eigen::Index>(nb.v));
    }
    y.row(u) = x.row(u) - inv_sqrt_degree_(u) * acc;
  }
}

std::optional<Eigen::MatrixXd> NormalizedLaplacian::dense() const {
  const std::size_t n = size();
  if (n > kMaxDenseVertices) return std::nullopt;
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(ni, ni);
  for (const Edge& e : graph_->edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    const double val = -e.w * inv_sqrt_degree_(u) * inv_sqrt_degree_(v);
    m(u, v) = val;
    m(v, u) = val;
  }
  return m;
}

double NormalizedLaplacian::quadratic_form(const Eigen::VectorXd& x) const {
  // sum over edges of w (x_u / sqrt(d_u) - x_v / sqrt(d_v))^2
  double q = 0.0;
  for (const Edge& e : graph_->edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    const double diff = x(u) * inv_sqrt_degree_(u) - x(v) * inv_sqrt_degree_(v);
    q += e.w * diff * diff;
  }
  return q;
}

NormalizedLaplacian normalized_laplacian(const WeightedGraph& g) { return NormalizedLaplacian(g); }

}  // namespace metasc
