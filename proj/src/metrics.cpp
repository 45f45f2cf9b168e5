#include "metasc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "metasc/error.hpp"

namespace metasc {

namespace {

// Hungarian method (shortest augmenting paths with potentials) for a square
// min-cost assignment. Returns row -> column.
std::vector<std::size_t> hungarian_min(const Eigen::MatrixXd& cost) {
  const auto n = static_cast<std::size_t>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(static_cast<Eigen::Index>(i0 - 1), static_cast<Eigen::Index>(j - 1)) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n, 0);
  for (std::size_t j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

double max_weight_value(const Eigen::MatrixXd& w) {
  if (w.rows() == 0) return 0.0;
  const Eigen::MatrixXd cost = Eigen::MatrixXd::Constant(w.rows(), w.cols(), w.maxCoeff()) - w;
  const std::vector<std::size_t> a = hungarian_min(cost);
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a[i]));
  return total;
}

void require_same_shape(const Clustering& a, const Clustering& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::KMismatch, "clusterings cover " + std::to_string(a.size()) + " and " +
                                          std::to_string(b.size()) + " vertices");
  }
  if (a.k() != b.k()) {
    throw Error(ErrorCode::KMismatch, "clusterings have k=" + std::to_string(a.k()) + " and k=" + std::to_string(b.k()));
  }
}

}  // namespace

std::vector<std::size_t> max_weight_assignment(const Eigen::MatrixXd& weights, double tie_tol) {
  if (weights.rows() != weights.cols()) throw Error(ErrorCode::InvalidArgument, "assignment needs a square matrix");
  const auto k = static_cast<std::size_t>(weights.rows());
  if (k == 0) return {};
  const double tol = tie_tol * std::max(1.0, weights.cwiseAbs().maxCoeff());
  const double optimum = max_weight_value(weights);

  // Fix rows in order, each to the smallest column that still admits an
  // optimal completion.
  std::vector<std::size_t> result(k, 0);
  std::vector<std::size_t> free_cols(k);
  for (std::size_t j = 0; j < k; ++j) free_cols[j] = j;
  double fixed = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t rest = k - i - 1;
    bool placed = false;
    for (std::size_t c = 0; c < free_cols.size() && !placed; ++c) {
      const std::size_t j = free_cols[c];
      Eigen::MatrixXd sub(static_cast<Eigen::Index>(rest), static_cast<Eigen::Index>(rest));
      for (std::size_t r = 0; r < rest; ++r) {
        std::size_t col = 0;
        for (std::size_t cc = 0; cc < free_cols.size(); ++cc) {
          if (cc == c) continue;
          sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col++)) =
              weights(static_cast<Eigen::Index>(i + 1 + r), static_cast<Eigen::Index>(free_cols[cc]));
        }
      }
      const double wij = weights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (fixed + wij + max_weight_value(sub) >= optimum - tol) {
        result[i] = j;
        fixed += wij;
        free_cols.erase(free_cols.begin() + static_cast<std::ptrdiff_t>(c));
        placed = true;
      }
    }
    if (!placed) throw Error(ErrorCode::InvalidArgument, "assignment refinement lost the optimum");
  }
  return result;
}

Eigen::MatrixXd confusion_counts(const Clustering& output, const Clustering& truth) {
  if (output.size() != truth.size()) throw Error(ErrorCode::KMismatch, "clusterings differ in size");
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(output.k()), static_cast<Eigen::Index>(truth.k()));
  for (std::size_t u = 0; u < output.size(); ++u) {
    c(static_cast<Eigen::Index>(output.label(u)), static_cast<Eigen::Index>(truth.label(u))) += 1.0;
  }
  return c;
}

Eigen::MatrixXd confusion_volumes(const Clustering& output, const Clustering& truth, const WeightedGraph& g) {
  if (output.size() != truth.size() || output.size() != g.num_vertices()) {
    throw Error(ErrorCode::KMismatch, "clusterings and graph differ in size");
  }
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(output.k()), static_cast<Eigen::Index>(truth.k()));
  for (std::size_t u = 0; u < output.size(); ++u) {
    c(static_cast<Eigen::Index>(output.label(u)), static_cast<Eigen::Index>(truth.label(u))) += g.degree(u);
  }
  return c;
}

double symdiff_volume_for(const Clustering& output, const Clustering& truth, const WeightedGraph& g,
                          const std::vector<std::size_t>& sigma) {
  require_same_shape(output, truth);
  const std::size_t k = output.k();
  std::vector<char> seen(k, 0);
  if (sigma.size() != k) throw Error(ErrorCode::KMismatch, "matching has the wrong length");
  for (std::size_t s : sigma) {
    if (s >= k || seen[s]) throw Error(ErrorCode::InvalidArgument, "matching is not a permutation");
    seen[s] = 1;
  }
  const Eigen::MatrixXd conf = confusion_volumes(output, truth, g);
  const Eigen::VectorXd out_vol = conf.rowwise().sum();
  const Eigen::RowVectorXd truth_vol = conf.colwise().sum();
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const auto jj = static_cast<Eigen::Index>(sigma[i]);
    total += out_vol(ii) + truth_vol(jj) - 2.0 * conf(ii, jj);
  }
  return total;
}

MatchResult optimal_match(const Clustering& output, const Clustering& truth, const WeightedGraph* g,
                          MatchObjective objective) {
  require_same_shape(output, truth);
  const Eigen::MatrixXd counts = confusion_counts(output, truth);
  MatchResult r;
  if (objective == MatchObjective::MaxOverlapCount) {
    r.sigma = max_weight_assignment(counts);
  } else {
    if (g == nullptr) throw Error(ErrorCode::InvalidArgument, "volume matching needs the graph");
    // Minimizing sum vol(A_i △ S_sigma(i)) = 2 vol(V) - 2 sum vol(A_i ∩ S_sigma(i)).
    r.sigma = max_weight_assignment(confusion_volumes(output, truth, *g));
  }
  r.overlap.resize(output.k());
  double overlap_total = 0.0;
  for (std::size_t i = 0; i < output.k(); ++i) {
    const double c = counts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(r.sigma[i]));
    r.overlap[i] = static_cast<std::size_t>(c);
    overlap_total += c;
  }
  r.objective = objective == MatchObjective::MaxOverlapCount ? overlap_total
                                                               : symdiff_volume_for(output, truth, *g, r.sigma);
  return r;
}

AccuracyResult accuracy(const Clustering& output, const Clustering& truth) {
  const MatchResult m = optimal_match(output, truth, nullptr, MatchObjective::MaxOverlapCount);
  bool unequal = false;
  for (std::size_t i = 1; i < truth.k(); ++i) unequal = unequal || truth.cluster_size(i) != truth.cluster_size(0);
  return {m.objective / static_cast<double>(output.size()), unequal};
}

double symdiff_volume(const Clustering& output, const Clustering& truth, const WeightedGraph& g) {
  return optimal_match(output, truth, &g, MatchObjective::MinSymdiffVolume).objective;
}

PairIndices pair_indices(const Clustering& a, const Clustering& b, NmiNormalization norm) {
  if (a.size() != b.size()) throw Error(ErrorCode::KMismatch, "clusterings differ in size");
  const std::size_t n = a.size();
  std::vector<std::uint64_t> table(a.k() * b.k(), 0);
  for (std::size_t u = 0; u < n; ++u) ++table[a.label(u) * b.k() + b.label(u)];
  auto pairs = [](std::uint64_t x) { return x * (x > 0 ? x - 1 : 0) / 2; };

  std::uint64_t same_both = 0;
  for (std::uint64_t c : table) same_both += pairs(c);
  std::uint64_t same_a = 0;
  std::uint64_t same_b = 0;
  for (std::size_t i = 0; i < a.k(); ++i) same_a += pairs(a.cluster_size(i));
  for (std::size_t j = 0; j < b.k(); ++j) same_b += pairs(b.cluster_size(j));
  const std::uint64_t all = pairs(n);

  PairIndices out{1.0, 1.0, 1.0};
  if (all > 0) {
    // agreements: together in both, or apart in both
    const std::uint64_t apart_both = all - same_a - same_b + same_both;
    out.rand = static_cast<double>(same_both + apart_both) / static_cast<double>(all);
    const double expected = static_cast<double>(same_a) * static_cast<double>(same_b) / static_cast<double>(all);
    const double max_index = 0.5 * static_cast<double>(same_a + same_b);
    const double den = max_index - expected;
    out.ari = den == 0.0 ? 1.0 : (static_cast<double>(same_both) - expected) / den;
  }

  const auto nd = static_cast<double>(n);
  double ha = 0.0;
  double hb = 0.0;
  double mi = 0.0;
  for (std::size_t i = 0; i < a.k(); ++i) {
    const double pa = static_cast<double>(a.cluster_size(i)) / nd;
    ha -= pa * std::log(pa);
  }
  for (std::size_t j = 0; j < b.k(); ++j) {
    const double pb = static_cast<double>(b.cluster_size(j)) / nd;
    hb -= pb * std::log(pb);
  }
  for (std::size_t i = 0; i < a.k(); ++i) {
    for (std::size_t j = 0; j < b.k(); ++j) {
      const std::uint64_t c = table[i * b.k() + j];
      if (c == 0) continue;
      const double pij = static_cast<double>(c) / nd;
      mi += pij * std::log(static_cast<double>(c) * nd /
                           (static_cast<double>(a.cluster_size(i)) * static_cast<double>(b.cluster_size(j))));
    }
  }
  const double den = norm == NmiNormalization::Arithmetic ? 0.5 * (ha + hb) : std::max(ha, hb);
  if (den <= 0.0) {
    out.nmi = 1.0;  // both clusterings trivial
  } else {
    out.nmi = std::clamp(mi / den, 0.0, 1.0);
  }
  return out;
}

}  // namespace metasc
