#include "metasc/kmeans.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "metasc/error.hpp"
#include "metasc/rng.hpp"

namespace metasc {

PointSet::PointSet(Eigen::MatrixXd pts, Eigen::VectorXd w) : points(std::move(pts)), weights(std::move(w)) {
  if (points.cols() < 1) throw Error(ErrorCode::InvalidArgument, "points need dimension >= 1");
  if (weights.size() != points.rows()) {
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(points.rows()) + " weights, got " +
                                                std::to_string(weights.size()));
  }
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (!(weights(i) > 0.0) || !std::isfinite(weights(i))) {
      throw Error(ErrorCode::InvalidArgument, "weight of point " + std::to_string(i) + " is not positive");
    }
  }
  if (!points.allFinite()) throw Error(ErrorCode::InvalidArgument, "points contain non-finite coordinates");
}

PointSet PointSet::unweighted(Eigen::MatrixXd pts) {
  const Eigen::Index n = pts.rows();
  return PointSet(std::move(pts), Eigen::VectorXd::Ones(n));
}

namespace {

std::size_t count_distinct(const Eigen::MatrixXd& pts) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(pts.rows()));
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index c = 0; c < pts.cols(); ++c) {
      if (pts(a, c) != pts(b, c)) return pts(a, c) < pts(b, c);
    }
    return false;
  };
  std::sort(order.begin(), order.end(), less);
  std::size_t distinct = order.empty() ? 0 : 1;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (less(order[i - 1], order[i])) ++distinct;
  }
  return distinct;
}

double sq_dist(const Eigen::MatrixXd& pts, Eigen::Index u, const Eigen::MatrixXd& centers, Eigen::Index c) {
  return (pts.row(u) - centers.row(c)).squaredNorm();
}

// Nearest center for every point (lowest index on ties); returns the cost and
// fills `dist` with each point's squared distance to its center.
double assign(const PointSet& ps, const Eigen::MatrixXd& centers, std::vector<std::size_t>& labels,
              std::vector<double>& dist) {
  const auto n = static_cast<Eigen::Index>(ps.size());
  labels.resize(ps.size());
  dist.resize(ps.size());
  double cost = 0.0;
  for (Eigen::Index u = 0; u < n; ++u) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index arg = 0;
    for (Eigen::Index c = 0; c < centers.rows(); ++c) {
      const double d = sq_dist(ps.points, u, centers, c);
      if (d < best) {
        best = d;
        arg = c;
      }
    }
    labels[static_cast<std::size_t>(u)] = static_cast<std::size_t>(arg);
    dist[static_cast<std::size_t>(u)] = best;
    cost += ps.weights(u) * best;
  }
  return cost;
}

std::size_t sample_weighted(Rng& rng, const std::vector<double>& mass, double total) {
  const double target = rng.uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] <= 0.0) continue;
    acc += mass[i];
    last_positive = i;
    if (target < acc) return i;
  }
  return last_positive;  // rounding at the top end
}

Eigen::MatrixXd seed_plus_plus(const PointSet& ps, std::size_t k, Rng& rng) {
  const std::size_t n = ps.size();
  Eigen::MatrixXd centers(static_cast<Eigen::Index>(k), ps.points.cols());
  std::vector<double> mass(n);
  for (std::size_t u = 0; u < n; ++u) mass[u] = ps.weights(static_cast<Eigen::Index>(u));
  std::size_t first = sample_weighted(rng, mass, ps.weights.sum());
  centers.row(0) = ps.points.row(static_cast<Eigen::Index>(first));

  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      const auto ui = static_cast<Eigen::Index>(u);
      d2[u] = std::min(d2[u], sq_dist(ps.points, ui, centers, static_cast<Eigen::Index>(c - 1)));
      mass[u] = ps.weights(ui) * d2[u];
      total += mass[u];
    }
    const std::size_t pick = sample_weighted(rng, mass, total);
    centers.row(static_cast<Eigen::Index>(c)) = ps.points.row(static_cast<Eigen::Index>(pick));
  }
  return centers;
}

Eigen::MatrixXd centroids_of(const PointSet& ps, const std::vector<std::size_t>& labels, std::size_t k,
                             std::vector<double>& mass) {
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), ps.points.cols());
  mass.assign(k, 0.0);
  for (std::size_t u = 0; u < labels.size(); ++u) {
    const auto ui = static_cast<Eigen::Index>(u);
    sums.row(static_cast<Eigen::Index>(labels[u])) += ps.weights(ui) * ps.points.row(ui);
    mass[labels[u]] += ps.weights(ui);
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (mass[c] > 0.0) sums.row(static_cast<Eigen::Index>(c)) /= mass[c];
  }
  return sums;
}

KMeansResult single_run(const PointSet& ps, std::size_t k, std::size_t max_iters, std::uint64_t seed) {
  Rng rng(seed);
  KMeansResult r;
  r.centers = seed_plus_plus(ps, k, rng);
  std::vector<double> dist;
  r.cost = assign(ps, r.centers, r.assignment, dist);
  r.seeding_cost = r.cost;
  r.cost_trace.push_back(r.cost);

  std::vector<double> mass;
  std::vector<std::size_t> next;
  for (std::size_t it = 0; it < max_iters; ++it) {
    Eigen::MatrixXd centers = centroids_of(ps, r.assignment, k, mass);
    // Empty cluster: move its center onto the point that currently pays the
    // most, w(u) * dist(u)^2.
    for (std::size_t c = 0; c < k; ++c) {
      if (mass[c] > 0.0) continue;
      std::size_t far = 0;
      double worst = -1.0;
      for (std::size_t u = 0; u < ps.size(); ++u) {
        const double pay = ps.weights(static_cast<Eigen::Index>(u)) * dist[u];
        if (pay > worst) {
          worst = pay;
          far = u;
        }
      }
      centers.row(static_cast<Eigen::Index>(c)) = ps.points.row(static_cast<Eigen::Index>(far));
      dist[far] = 0.0;
    }
    const double cost = assign(ps, centers, next, dist);
    r.cost_trace.push_back(cost);
    r.centers = std::move(centers);
    r.cost = cost;
    const bool fixpoint = next == r.assignment;
    r.assignment.swap(next);
    if (fixpoint) break;
  }
  return r;
}

}  // namespace

KMeansResult kmeans(const PointSet& ps, std::size_t k, const KMeansOptions& opts, std::uint64_t seed) {
  const std::size_t n = ps.size();
  if (k < 1) throw Error(ErrorCode::InvalidK, "k must be >= 1");
  if (k > n) {
    throw Error(ErrorCode::KTooLarge, "k=" + std::to_string(k) + " exceeds the " + std::to_string(n) + " points");
  }
  if (opts.restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be >= 1");
  const std::size_t distinct = count_distinct(ps.points);
  if (distinct < k) {
    throw Error(ErrorCode::DegeneratePoints,
                "only " + std::to_string(distinct) + " distinct points for k=" + std::to_string(k));
  }

  std::vector<KMeansResult> runs(opts.restarts);
  std::size_t threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, opts.restarts);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r; (r = next.fetch_add(1)) < opts.restarts;) {
      runs[r] = single_run(ps, k, opts.max_iters, derive_seed(seed, r));
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].cost < runs[best].cost) best = r;
  }
  KMeansResult out = std::move(runs[best]);
  out.best_restart = best;
  return out;
}

Eigen::MatrixXd weighted_centroids(const PointSet& ps, const Clustering& clustering) {
  if (clustering.size() != ps.size()) {
    throw Error(ErrorCode::InvalidArgument, "clustering covers " + std::to_string(clustering.size()) +
                                                " points, point set has " + std::to_string(ps.size()));
  }
  std::vector<std::size_t> labels(clustering.labels().begin(), clustering.labels().end());
  std::vector<double> mass;
  return centroids_of(ps, labels, clustering.k(), mass);
}

double assignment_cost(const PointSet& ps, const Eigen::MatrixXd& centers, const std::vector<std::size_t>& assignment) {
  if (assignment.size() != ps.size()) throw Error(ErrorCode::InvalidArgument, "assignment size mismatch");
  double cost = 0.0;
  for (std::size_t u = 0; u < ps.size(); ++u) {
    if (assignment[u] >= static_cast<std::size_t>(centers.rows())) {
      throw Error(ErrorCode::LabelOutOfRange, "label " + std::to_string(assignment[u]) + " has no center");
    }
    const auto ui = static_cast<Eigen::Index>(u);
    cost += ps.weights(ui) * sq_dist(ps.points, ui, centers, static_cast<Eigen::Index>(assignment[u]));
  }
  return cost;
}

double kmeans_cost(const PointSet& ps, const Clustering& clustering) {
  const Eigen::MatrixXd centers = weighted_centroids(ps, clustering);
  std::vector<std::size_t> labels(clustering.labels().begin(), clustering.labels().end());
  return assignment_cost(ps, centers, labels);
}

}  // namespace metasc
