#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "metasc/error.hpp"
#include "metasc/generators.hpp"
#include "metasc/metagraph.hpp"

using namespace metasc;

namespace {

MetaGraph cycle_meta(std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < k; ++i) e.emplace_back(std::min(i, (i + 1) % k), std::max(i, (i + 1) % k));
  return meta_graph_from_edges(k, e);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("meta-graph of simple partitions") {
  const auto m = build_meta_graph(testutil::two_triangles(), Clustering(2, {0, 0, 0, 1, 1, 1}));
  CHECK(m.adjacency() == (Eigen::Matrix2d() << 6, 0, 0, 6).finished());
  const auto e = build_meta_graph(testutil::single_edge(), Clustering(2, {0, 1}));
  CHECK(e.adjacency() == (Eigen::Matrix2d() << 0, 1, 1, 0).finished());
}

TEST_CASE("meta row sums equal cluster volumes") {
  const auto inst = sbm_meta(cycle_template(6), 30, 0.3, 0.05, 1);
  const auto m = build_meta_graph(inst.graph, inst.truth);
  const auto vols = cluster_volumes(inst.graph, inst.truth);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(std::abs(m.adjacency().row(static_cast<Eigen::Index>(i)).sum() - vols[i]) <= 1e-9 * vols[i]);
  }
}

TEST_CASE("meta-graph validation") {
  CHECK(code_of([] { MetaGraph(Eigen::MatrixXd::Zero(2, 3)); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { MetaGraph((Eigen::MatrixXd(2, 2) << 0, -1, -1, 0).finished()); }) == ErrorCode::NegativeWeight);
  CHECK(code_of([] { MetaGraph((Eigen::MatrixXd(2, 2) << 0, 1, 2, 0).finished()); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { MetaGraph((Eigen::MatrixXd(2, 2) << 1, 0, 0, 0).finished()); }) == ErrorCode::IsolatedVertex);
}

TEST_CASE("C6 meta embedding") {
  const auto me = meta_embedding(cycle_meta(6), 3);
  CHECK(std::abs(me.gamma(0)) <= 1e-9);
  CHECK(std::abs(me.gamma(1) - 0.5) <= 1e-9);
  CHECK(std::abs(me.gamma(2) - 0.5) <= 1e-9);
  CHECK(std::abs(me.points().squaredNorm() - 3.0) <= 1e-8);
  const auto th = distinguishability_theta(me);
  CHECK(std::abs(th.min_normalized_sep_sq - 2.0 / 3.0) <= 1e-6);
  CHECK(std::abs(th.min_norm_sq - 0.5) <= 1e-9);
  CHECK(th.theta == doctest::Approx(0.5));
}

TEST_CASE("K2 meta embedding") {
  const auto me = meta_embedding(meta_graph_from_edges(2, {{0, 1}}), 2);
  CHECK(std::abs(me.gamma(0)) <= 1e-12);
  CHECK(std::abs(me.gamma(1) - 2.0) <= 1e-12);
  CHECK(std::abs(std::abs(me.points()(0, 0)) - 1.0 / std::sqrt(2.0)) <= 1e-12);
  CHECK(std::abs(std::abs(me.points()(0, 1)) - 1.0 / std::sqrt(2.0)) <= 1e-12);
}

TEST_CASE("4x4 grid meta embedding") {
  const auto t = grid_template(4, 4);
  const auto m = meta_graph_from_edges(16, t.edges);
  const auto me = meta_embedding(m, 3);
  // dense oracle straight from the Laplacian definition
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.normalized_laplacian());
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(std::abs(me.gamma(i) - es.eigenvalues()(i)) <= 1e-9);
  const auto th = distinguishability_theta(me);
  CHECK(th.min_normalized_sep_sq >= 0.05);
  CHECK(th.min_normalized_sep_sq <= 0.2);
}

TEST_CASE("full embedding has unit row norms") {
  const auto inst = sbm_meta(path_template(5), 20, 0.4, 0.1, 2);
  const auto me = meta_embedding(build_meta_graph(inst.graph, inst.truth), 5);
  CHECK(distinguishability_theta(me).min_norm_sq == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("theta is invariant under rotation inside a degenerate block") {
  const auto me = meta_embedding(cycle_meta(8), 3);
  auto rotated = me;
  const double t = 0.37;
  Eigen::Matrix2d r;
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  rotated.vectors.middleCols(1, 2) = me.vectors.middleCols(1, 2) * r;
  const auto a = distinguishability_theta(me);
  const auto b = distinguishability_theta(rotated);
  CHECK(std::abs(a.theta - b.theta) <= 1e-8);
  CHECK(std::abs(a.min_normalized_sep_sq - b.min_normalized_sep_sq) <= 1e-8);
}

TEST_CASE("zero embedding norm is an error") {
  // first meta-vertex invisible in the kept eigenvector
  MetaEmbedding me;
  me.l = 1;
  me.gamma = Eigen::VectorXd::Zero(1);
  me.vectors = (Eigen::MatrixXd(3, 1) << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)).finished();
  CHECK(code_of([&] { distinguishability_theta(me); }) == ErrorCode::ZeroEmbeddingNorm);
}

TEST_CASE("upsilon on disjoint triangles is infinite") {
  const auto r = upsilon(testutil::two_triangles(), Clustering(2, {0, 0, 0, 1, 1, 1}));
  CHECK(r.surrogate.is_infinite());
  REQUIRE(r.exact_rho.has_value());
  CHECK(*r.exact_rho == 0.0);
}

TEST_CASE("upsilon on a dumbbell") {
  std::vector<Edge> e;
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t a = 0; a < 5; ++a) {
      for (std::size_t b = a + 1; b < 5; ++b) e.push_back({5 * c + a, 5 * c + b, 1.0});
    }
  }
  e.push_back({4, 5, 1.0});
  const WeightedGraph g(10, e);
  const Clustering c(2, {0, 0, 0, 0, 0, 1, 1, 1, 1, 1});
  const auto r = upsilon(g, c);
  // oracle: dense eigensolve of the definition, conductance by hand (1 / 21)
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(*normalized_laplacian(g).dense());
  CHECK(std::abs(r.lambda_next - es.eigenvalues()(2)) <= 1e-8);
  CHECK(std::abs(r.max_conductance - 1.0 / 21.0) <= 1e-12);
  CHECK(std::abs(r.surrogate.value() - es.eigenvalues()(2) * 21.0) <= 1e-8 * r.surrogate.value());
}

TEST_CASE("psi values") {
  const auto inst = sbm_meta(cycle_template(5), 20, 0.5, 0.1, 4);
  CHECK(psi(inst.graph, inst.truth, 1) == doctest::Approx(0.0));
  const double p5 = psi(inst.graph, inst.truth, 5);
  // independent dense computation
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gs(*normalized_laplacian(inst.graph).dense());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ms(build_meta_graph(inst.graph, inst.truth).normalized_laplacian());
  CHECK(p5 >= 0.0);
  CHECK(std::abs(p5 - ms.eigenvalues().sum() / gs.eigenvalues()(5)) <= 1e-8);
}

TEST_CASE("psi on disconnected instances") {
  const auto g = testutil::cliques(3, 4);
  CHECK(code_of([&] { psi(g, Clustering(3, {0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2}), 2); }) == ErrorCode::ZeroDenominator);
}

TEST_CASE("interlacing on random partitions") {
  Rng rng(8);
  for (std::uint64_t s = 0; s < 8; ++s) {
    const auto g = testutil::random_connected(40, 0.1, 300 + s);
    const Clustering c(4, testutil::random_labels(40, 4, rng));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gs(*normalized_laplacian(g).dense());
    const auto me = meta_embedding(build_meta_graph(g, c), 4);
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(gs.eigenvalues()(i) <= me.gamma(i) + 1e-8);
  }
}
