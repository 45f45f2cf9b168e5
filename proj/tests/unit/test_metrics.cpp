#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "helpers.hpp"
#include "metasc/error.hpp"
#include "metasc/metrics.hpp"

using namespace metasc;

namespace {

struct Brute {
  double best_overlap = -1.0;
  double best_symdiff = 1e300;
};

Brute brute_force(const Clustering& out, const Clustering& truth, const WeightedGraph& g) {
  std::vector<std::size_t> sigma(out.k());
  std::iota(sigma.begin(), sigma.end(), 0);
  Brute b;
  do {
    double overlap = 0.0;
    for (std::size_t u = 0; u < out.size(); ++u) overlap += sigma[out.label(u)] == truth.label(u);
    b.best_overlap = std::max(b.best_overlap, overlap);
    // vol(A_i △ S_sigma(i)) by direct set membership
    double sd = 0.0;
    for (std::size_t i = 0; i < out.k(); ++i) {
      for (std::size_t u = 0; u < out.size(); ++u) {
        if ((out.label(u) == i) != (truth.label(u) == sigma[i])) sd += g.degree(u);
      }
    }
    b.best_symdiff = std::min(b.best_symdiff, sd);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return b;
}

// Direct O(n^2) pair enumeration.
PairIndices pair_oracle(const Clustering& a, const Clustering& b) {
  const std::size_t n = a.size();
  double ss = 0, sd = 0, ds = 0, dd = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const bool x = a.label(u) == a.label(v);
      const bool y = b.label(u) == b.label(v);
      (x ? (y ? ss : sd) : (y ? ds : dd)) += 1.0;
    }
  }
  const double all = ss + sd + ds + dd;
  PairIndices r{};
  r.rand = (ss + dd) / all;
  const double sa = ss + sd;
  const double sb = ss + ds;
  const double expected = sa * sb / all;
  r.ari = (ss - expected) / (0.5 * (sa + sb) - expected);
  r.nmi = 0.0;
  return r;
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

TEST_CASE("identical clusterings") {
  const auto g = testutil::random_connected(30, 0.2, 1);
  Rng rng(2);
  const Clustering c(4, testutil::random_labels(30, 4, rng));
  const auto m = optimal_match(c, c, &g, MatchObjective::MinSymdiffVolume);
  CHECK(m.sigma == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(m.objective == 0.0);
  CHECK(symdiff_volume(c, c, g) == 0.0);
  CHECK(accuracy(c, c).accuracy == 1.0);
  const auto pi = pair_indices(c, c);
  CHECK(pi.rand == 1.0);
  CHECK(pi.ari == doctest::Approx(1.0));
  CHECK(pi.nmi == doctest::Approx(1.0));
}

TEST_CASE("swapped labels are undone") {
  const Clustering truth(3, {0, 0, 1, 1, 2, 2, 2});
  const Clustering out(3, {1, 1, 0, 0, 2, 2, 2});
  const auto m = optimal_match(out, truth, nullptr, MatchObjective::MaxOverlapCount);
  CHECK(m.sigma == std::vector<std::size_t>{1, 0, 2});
  CHECK(m.objective == 7.0);
  CHECK(m.overlap == std::vector<std::size_t>{2, 2, 3});
}

TEST_CASE("accuracy with one wrong vertex") {
  std::vector<std::size_t> t(100), o(100);
  for (std::size_t u = 0; u < 100; ++u) t[u] = o[u] = u / 50;
  o[0] = 1;
  const auto r = accuracy(Clustering(2, o), Clustering(2, t));
  CHECK(r.accuracy == doctest::Approx(0.99));
  CHECK(!r.unequal_sizes);
  CHECK(accuracy(Clustering(2, o), Clustering(2, o)).unequal_sizes);
}

TEST_CASE("random 2-clusterings have accuracy near one half") {
  std::vector<std::size_t> t(2000);
  for (std::size_t u = 0; u < 2000; ++u) t[u] = u % 2;
  double total = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(s);
    total += accuracy(Clustering(2, testutil::random_labels(2000, 2, rng)), Clustering(2, t)).accuracy;
  }
  CHECK(std::abs(total / 20.0 - 0.5) <= 0.1);
}

TEST_CASE("single misplaced vertex costs twice its degree") {
  const auto g = testutil::random_connected(20, 0.3, 4);
  std::vector<std::size_t> t(20);
  for (std::size_t u = 0; u < 20; ++u) t[u] = u / 5;
  auto o = t;
  o[7] = 3;
  CHECK(symdiff_volume(Clustering(4, o), Clustering(4, t), g) == doctest::Approx(2.0 * g.degree(7)));
}

TEST_CASE("assignment equals factorial enumeration") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    Rng rng(1000 + s);
    const std::size_t k = 2 + s % 5;
    const std::size_t n = 25;
    const auto g = testutil::random_connected(n, 0.2, 2000 + s);
    const Clustering a(k, testutil::random_labels(n, k, rng));
    const Clustering b(k, testutil::random_labels(n, k, rng));
    const Brute br = brute_force(a, b, g);
    CHECK(optimal_match(a, b, nullptr, MatchObjective::MaxOverlapCount).objective == br.best_overlap);
    CHECK(std::abs(symdiff_volume(a, b, g) - br.best_symdiff) <= 1e-9);
  }
}

TEST_CASE("ties resolve to the lexicographically smallest permutation") {
  const Eigen::MatrixXd w = Eigen::MatrixXd::Ones(4, 4);
  CHECK(max_weight_assignment(w) == std::vector<std::size_t>{0, 1, 2, 3});
  Eigen::MatrixXd v(3, 3);
  v << 1, 1, 0, 1, 1, 0, 0, 0, 1;
  CHECK(max_weight_assignment(v) == std::vector<std::size_t>{0, 1, 2});
  Eigen::MatrixXd u(3, 3);
  u << 0, 5, 5, 5, 0, 5, 5, 5, 0;
  CHECK(max_weight_assignment(u) == std::vector<std::size_t>{1, 2, 0});  // optima: (1,2,0), (2,0,1)
}

TEST_CASE("singletons against one cluster") {
  const Clustering singletons(4, {0, 1, 2, 3});
  const Clustering one(1, {0, 0, 0, 0});
  const auto r = pair_indices(singletons, one);
  const auto o = pair_oracle(singletons, one);
  // no pair agrees: apart in one clustering, together in the other
  CHECK(r.rand == o.rand);
  CHECK(r.rand == 0.0);
  CHECK(r.ari == 0.0);
  CHECK(r.nmi == 0.0);
}

TEST_CASE("pair counts match direct enumeration") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(50 + s);
    const std::size_t n = 20 + 9 * s;
    const Clustering a(2 + s % 4, testutil::random_labels(n, 2 + s % 4, rng));
    const Clustering b(3 + s % 3, testutil::random_labels(n, 3 + s % 3, rng));
    const auto r = pair_indices(a, b);
    const auto o = pair_oracle(a, b);
    CHECK(std::abs(r.rand - o.rand) <= 1e-12);
    CHECK(std::abs(r.ari - o.ari) <= 1e-12);
    CHECK(r.rand >= 0.0);
    CHECK(r.rand <= 1.0);
    CHECK(r.nmi >= 0.0);
    CHECK(r.nmi <= 1.0);
    CHECK(r.ari >= -1.0);
    CHECK(r.ari <= 1.0);
  }
}

TEST_CASE("ARI averages to zero on random clusterings") {
  double total = 0.0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(7000 + s);
    const Clustering a(5, testutil::random_labels(500, 5, rng));
    const Clustering b(5, testutil::random_labels(500, 5, rng));
    total += pair_indices(a, b).ari;
  }
  CHECK(std::abs(total / 50.0) <= 0.05);
}

TEST_CASE("NMI normalizations") {
  const Clustering a(2, {0, 0, 0, 1, 1, 1});
  const Clustering b(3, {0, 0, 1, 1, 2, 2});
  // H(a) = ln 2, H(b) = ln 3, I = ln 2 - (1/3) ln 2 ... computed from the table
  const double ha = std::log(2.0);
  const double hb = std::log(3.0);
  double mi = 0.0;
  const double cells[2][3] = {{2, 1, 0}, {0, 1, 2}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (cells[i][j] > 0) mi += cells[i][j] / 6.0 * std::log(cells[i][j] * 6.0 / (3.0 * 2.0));
    }
  }
  CHECK(pair_indices(a, b).nmi == doctest::Approx(mi / (0.5 * (ha + hb))).epsilon(1e-12));
  CHECK(pair_indices(a, b, NmiNormalization::Max).nmi == doctest::Approx(mi / hb).epsilon(1e-12));
}

TEST_CASE("metrics are invariant under relabeling") {
  Rng rng(3);
  const auto g = testutil::random_connected(40, 0.15, 8);
  const Clustering a(4, testutil::random_labels(40, 4, rng));
  const Clustering b(4, testutil::random_labels(40, 4, rng));
  const std::vector<std::size_t> p{2, 3, 1, 0};
  const auto b2 = b.relabeled(p);
  CHECK(accuracy(a, b).accuracy == accuracy(a, b2).accuracy);
  CHECK(std::abs(symdiff_volume(a, b, g) - symdiff_volume(a, b2, g)) <= 1e-9);
  const auto x = pair_indices(a, b);
  const auto y = pair_indices(a.relabeled(p), b2);
  CHECK(x.rand == y.rand);
  CHECK(std::abs(x.ari - y.ari) <= 1e-12);
  CHECK(std::abs(x.nmi - y.nmi) <= 1e-12);
}

TEST_CASE("metric errors") {
  const Clustering a(2, {0, 1, 0});
  const Clustering b(3, {0, 1, 2});
  CHECK(code_of([&] { optimal_match(a, b, nullptr, MatchObjective::MaxOverlapCount); }) == ErrorCode::KMismatch);
  CHECK(code_of([&] { accuracy(a, Clustering(2, {0, 1})); }) == ErrorCode::KMismatch);
  CHECK(code_of([&] { pair_indices(a, Clustering(2, {0, 1})); }) == ErrorCode::KMismatch);
}
