#include "metasc/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "metasc/error.hpp"
#include "metasc/kmeans.hpp"
#include "metasc/metrics.hpp"
#include "metasc/pipeline.hpp"

namespace metasc {

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Satisfied:
      return "satisfied";
    case CheckStatus::Violated:
      return "violated";
    case CheckStatus::NotApplicable:
      return "not-applicable";
    case CheckStatus::Surrogate:
      return "surrogate";
  }
  return "unknown";
}

namespace {

ExtReal difference(const ExtReal& bound, const ExtReal& lhs) {
  if (bound.is_infinite()) return lhs.is_infinite() ? ExtReal(0.0) : ExtReal::infinity();
  if (lhs.is_infinite()) return ExtReal(-std::numeric_limits<double>::infinity());
  return ExtReal(bound.value() - lhs.value());
}

std::string indexed(const std::string& id, std::size_t i) { return id + "[" + std::to_string(i) + "]"; }

}  // namespace

void TheoryReport::add_bound(std::string id, ExtReal lhs, ExtReal bound, bool applicable, bool surrogate) {
  TheoryRecord r{std::move(id), lhs, bound, difference(bound, lhs), CheckStatus::Satisfied};
  if (!applicable) {
    r.status = CheckStatus::NotApplicable;
  } else if (r.slack.value() >= -kSlackTolerance) {
    r.status = surrogate ? CheckStatus::Surrogate : CheckStatus::Satisfied;
  } else {
    r.status = CheckStatus::Violated;
  }
  records.push_back(std::move(r));
}

void TheoryReport::add_identity(std::string id, double lhs, double rhs, double tol) {
  const double slack = tol - std::abs(lhs - rhs);
  records.push_back({std::move(id), ExtReal(lhs), ExtReal(rhs), ExtReal(slack),
                     slack >= 0.0 ? CheckStatus::Satisfied : CheckStatus::Violated});
}

const TheoryRecord* TheoryReport::find(const std::string& id) const {
  for (const auto& r : records) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::size_t TheoryReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [s](const TheoryRecord& r) { return r.status == s; }));
}

void TheoryReport::append(const TheoryReport& other) {
  records.insert(records.end(), other.records.begin(), other.records.end());
}

TheoryContext::TheoryContext(const WeightedGraph& g, Clustering truth, std::size_t pairs,
                             const EigenOptions& opts)
    : g_(&g), truth_(std::move(truth)) {
  const NormalizedLaplacian lap(g);
  eigen_ = bottom_eigenpairs(lap, pairs, opts);
  init();
}

TheoryContext::TheoryContext(const WeightedGraph& g, Clustering truth, EigenPairs eigen)
    : g_(&g), truth_(std::move(truth)), eigen_(std::move(eigen)) {
  init();
}

void TheoryContext::init() {
  if (truth_.size() != g_->num_vertices()) {
    throw Error(ErrorCode::InvalidArgument, "partition size differs from graph");
  }
  if (static_cast<std::size_t>(eigen_.vectors.rows()) != g_->num_vertices()) {
    throw Error(ErrorCode::InvalidArgument, "eigenvector length differs from graph");
  }
  volumes_ = cluster_volumes(*g_, truth_);
  conductances_ = cluster_conductances(*g_, truth_);
  max_conductance_ = *std::max_element(conductances_.begin(), conductances_.end());
  const std::size_t k = truth_.k();
  if (k >= 2 && k < g_->num_vertices() && g_->num_vertices() <= kMaxBruteForceVertices) {
    const double rho = k_way_expansion_bruteforce(*g_, k).rho;
    upsilon_exact_ = std::abs(rho - max_conductance_) <= 1e-12 * std::max(1.0, rho);
  }
}

Eigen::MatrixXd TheoryContext::normalized_indicators() const {
  const auto n = static_cast<Eigen::Index>(g_->num_vertices());
  Eigen::MatrixXd chi = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(truth_.k()));
  for (Eigen::Index u = 0; u < n; ++u) {
    const std::size_t i = truth_.label(static_cast<std::size_t>(u));
    chi(u, static_cast<Eigen::Index>(i)) = std::sqrt(g_->degree(static_cast<std::size_t>(u)) / volumes_[i]);
  }
  return chi;
}

Eigen::MatrixXd TheoryContext::blow_up(const Eigen::MatrixXd& meta_vectors) const {
  if (static_cast<std::size_t>(meta_vectors.rows()) != truth_.k()) {
    throw Error(ErrorCode::KMismatch, "meta vectors need one row per cluster");
  }
  return normalized_indicators() * meta_vectors;
}

ExtReal TheoryContext::upsilon_surrogate() const {
  return ExtReal::ratio(lambda(truth_.k() + 1), max_conductance_);
}

Eigen::VectorXd projection_residuals(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& onto) {
  const Eigen::MatrixXd r = basis - onto * (onto.transpose() * basis);
  return r.colwise().squaredNorm().transpose();
}

namespace {

void require_pairs(const TheoryContext& ctx, std::size_t count) {
  if (ctx.eigen().count() < count) {
    throw Error(ErrorCode::InvalidArgument, "context holds " + std::to_string(ctx.eigen().count()) +
                                                " eigenpairs, " + std::to_string(count) + " needed");
  }
}

// lambda_{m+1}, which must be bounded away from zero for the bounds to mean anything.
double spectral_gap_denominator(const TheoryContext& ctx, std::size_t m) {
  require_pairs(ctx, m + 1);
  const double lam = ctx.lambda(m + 1);
  if (lam <= 1e-10) {
    throw Error(ErrorCode::DisconnectedGraph,
                "lambda_" + std::to_string(m + 1) + " = " + format_real(lam) + " leaves the bounds vacuous");
  }
  return lam;
}

Eigen::MatrixXd leading(const TheoryContext& ctx, std::size_t m) {
  return ctx.eigen().vectors.leftCols(static_cast<Eigen::Index>(m));
}

MetaEmbedding truth_meta(const TheoryContext& ctx, std::size_t l) {
  return meta_embedding(build_meta_graph(ctx.graph(), ctx.truth()), l);
}

// 1 / Upsilon, with an infinite Upsilon giving 0.
double inverse(const ExtReal& x) { return x.is_infinite() ? 0.0 : 1.0 / x.value(); }

double total_volume(const TheoryContext& ctx) { return ctx.graph().total_volume(); }

bool almost_balanced(const TheoryContext& ctx) {
  const double avg = total_volume(ctx) / static_cast<double>(ctx.truth().k());
  for (double v : ctx.volumes()) {
    if (v < 0.5 * avg || v > 2.0 * avg) return false;
  }
  return true;
}

// Records the worst pair (smallest slack) of a pairwise lower bound.
template <class Value, class Bound>
void add_pairwise_lower(TheoryReport& rep, const std::string& id, std::size_t k, Value value, Bound bound,
                        bool applicable, bool surrogate) {
  if (k < 2) return;
  double best_slack = std::numeric_limits<double>::infinity();
  double best_value = 0.0;
  double best_bound = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double v = value(i, j);
      const double b = bound(i, j);
      if (v - b < best_slack) {
        best_slack = v - b;
        best_value = v;
        best_bound = b;
      }
    }
  }
  rep.add_bound(id, best_bound, best_value, applicable, surrogate);
}

}  // namespace

TheoryReport verify_structure_theorem_k(const TheoryContext& ctx) {
  const std::size_t k = ctx.truth().k();
  const double lam = spectral_gap_denominator(ctx, k);
  const Eigen::MatrixXd chi = ctx.normalized_indicators();
  const Eigen::MatrixXd f = leading(ctx, k);
  const Eigen::VectorXd res_g = projection_residuals(chi, f);
  const Eigen::VectorXd res_f = projection_residuals(f, chi);
  const NormalizedLaplacian lap(ctx.graph());

  TheoryReport rep;
  for (std::size_t i = 0; i < k; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    rep.add_bound(indexed("structure_k.residual", i), res_g(ii), ctx.conductances()[i] / lam);
    rep.add_identity(indexed("structure_k.indicator_quadratic_form", i), lap.quadratic_form(chi.col(ii)),
                     ctx.conductances()[i]);
  }
  rep.add_identity("structure_k.projection_identity", res_f.sum(), res_g.sum());
  const ExtReal ups = ctx.upsilon_surrogate();
  rep.add_bound("structure_k.total_residual", res_f.sum(),
                ups.is_infinite() ? ExtReal(0.0) : ExtReal(static_cast<double>(k) / ups.value()), true,
                !ctx.upsilon_is_exact());
  return rep;
}

TheoryReport verify_structure_theorem_meta(const TheoryContext& ctx, std::size_t l) {
  const std::size_t k = ctx.truth().k();
  if (l < 1 || l > k) throw Error(ErrorCode::BadL, "need 1 <= l <= k, got l=" + std::to_string(l));
  const double lam = spectral_gap_denominator(ctx, l);
  const MetaEmbedding me = truth_meta(ctx, l);
  const Eigen::MatrixXd gbar = ctx.blow_up(me.vectors);
  const Eigen::MatrixXd f = leading(ctx, l);
  const Eigen::VectorXd res_g = projection_residuals(gbar, f);
  const Eigen::VectorXd res_f = projection_residuals(f, gbar);

  TheoryReport rep;
  for (std::size_t i = 0; i < l; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    rep.add_bound(indexed("structure_meta.residual", i), res_g(ii), me.gamma(ii) / lam);
  }
  rep.add_identity("structure_meta.projection_identity", res_f.sum(), res_g.sum());
  rep.add_bound("structure_meta.total_residual", res_f.sum(), psi(me.gamma, ctx.eigen().values, l));
  return rep;
}

TheoryReport verify_meta_spectrum(const TheoryContext& ctx) {
  const std::size_t k = ctx.truth().k();
  require_pairs(ctx, k);
  const MetaEmbedding me = truth_meta(ctx, k);
  const Eigen::MatrixXd gbar = ctx.blow_up(me.vectors);
  const NormalizedLaplacian lap(ctx.graph());

  TheoryReport rep;
  for (std::size_t i = 0; i < k; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    rep.add_bound(indexed("meta_spectrum.lower_bound", i), ctx.lambda(i + 1), me.gamma(ii));
  }
  const Eigen::MatrixXd gram = gbar.transpose() * gbar;
  const double off = (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  rep.add_identity("meta_spectrum.blowup_orthonormality", off, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    rep.add_identity(indexed("meta_spectrum.quadratic_form", i), lap.quadratic_form(gbar.col(ii)), me.gamma(ii));
  }
  return rep;
}

Eigen::MatrixXd approximate_centers(const TheoryContext& ctx, std::size_t l, bool indicator_form) {
  const std::size_t k = ctx.truth().k();
  if (l < 1 || l > k) throw Error(ErrorCode::BadL, "need 1 <= l <= k, got l=" + std::to_string(l));
  require_pairs(ctx, l);
  const Eigen::MatrixXd f = leading(ctx, l);
  Eigen::MatrixXd p;
  if (indicator_form) {
    if (l != k) throw Error(ErrorCode::BadL, "indicator-form centers need l == k");
    // p^(i)(j) = <f_j, gbar_i> / sqrt(vol_i)
    p = ctx.normalized_indicators().transpose() * f;
  } else {
    // p^(i)(j) = sum_x <f_j, gbar_x> g_x(i) / sqrt(vol_i)
    const MetaEmbedding me = truth_meta(ctx, l);
    const Eigen::MatrixXd gbar = ctx.blow_up(me.vectors);
    p = me.vectors * (gbar.transpose() * f);
  }
  for (std::size_t i = 0; i < k; ++i) p.row(static_cast<Eigen::Index>(i)) /= std::sqrt(ctx.volumes()[i]);
  return p;
}

TheoryReport center_geometry_report(const TheoryContext& ctx, std::size_t l) {
  const std::size_t k = ctx.truth().k();
  const std::vector<double>& vol = ctx.volumes();
  TheoryReport rep;

  // Centers built from all k eigenvectors and the normalized indicators.
  {
    spectral_gap_denominator(ctx, k);
    const Eigen::MatrixXd p = approximate_centers(ctx, k, true);
    const ExtReal ups = ctx.upsilon_surrogate();
    const double inv = inverse(ups);
    const bool sur = !ctx.upsilon_is_exact();
    const Eigen::VectorXd norm_sq = p.rowwise().squaredNorm();
    for (std::size_t i = 0; i < k; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      rep.add_bound(indexed("centers_k.norm_lower", i), (1.0 - inv) / vol[i], norm_sq(ii), true, sur);
      rep.add_bound(indexed("centers_k.norm_upper", i), norm_sq(ii), 1.0 / vol[i]);
    }
    auto row = [&](std::size_t i) { return p.row(static_cast<Eigen::Index>(i)); };
    add_pairwise_lower(
        rep, "centers_k.scaled_separation", k,
        [&](std::size_t i, std::size_t j) { return (std::sqrt(vol[i]) * row(i) - std::sqrt(vol[j]) * row(j)).squaredNorm(); },
        [&](std::size_t, std::size_t) { return 2.0 - 8.0 * inv; }, true, sur);
    add_pairwise_lower(
        rep, "centers_k.normalized_separation", k,
        [&](std::size_t i, std::size_t j) {
          return (row(i) / std::sqrt(norm_sq(static_cast<Eigen::Index>(i))) -
                  row(j) / std::sqrt(norm_sq(static_cast<Eigen::Index>(j))))
              .squaredNorm();
        },
        [&](std::size_t, std::size_t) { return 2.0 - 20.0 * inv; }, true, sur);
    add_pairwise_lower(
        rep, "centers_k.separation", k, [&](std::size_t i, std::size_t j) { return (row(i) - row(j)).squaredNorm(); },
        [&](std::size_t i, std::size_t j) { return (0.5 - 8.0 * inv) / std::min(vol[i], vol[j]); },
        ups.value() >= 32.0, sur);
  }

  // Centers built from l eigenvectors and the meta-graph blow-ups.
  if (k >= 2) {
    const double lam = spectral_gap_denominator(ctx, l);
    const MetaEmbedding me = truth_meta(ctx, l);
    Distinguishability dist{};
    try {
      dist = distinguishability_theta(me);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroEmbeddingNorm) throw;
      rep.add_bound("centers_meta.distinguishable", 0.0, 0.0, false);
      return rep;
    }
    const double theta = dist.theta;
    const double ps = me.gamma.sum() / lam;
    const double root = std::sqrt(ps);
    const bool applicable = ps <= theta * theta * theta / 1600.0;
    const Eigen::MatrixXd p = approximate_centers(ctx, l, false);
    const Eigen::VectorXd norm_sq = p.rowwise().squaredNorm();
    const Eigen::VectorXd x_sq = me.points().rowwise().squaredNorm();
    for (std::size_t i = 0; i < k; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      rep.add_bound(indexed("centers_meta.norm_lower", i), (1.0 - 4.0 * root / theta) * x_sq(ii) / vol[i],
                    norm_sq(ii), applicable);
      rep.add_bound(indexed("centers_meta.norm_upper", i), norm_sq(ii),
                    x_sq(ii) / vol[i] * (1.0 + 2.0 * root / theta), applicable);
    }
    auto row = [&](std::size_t i) { return p.row(static_cast<Eigen::Index>(i)); };
    auto xs = [&](std::size_t i) { return std::sqrt(x_sq(static_cast<Eigen::Index>(i))); };
    add_pairwise_lower(
        rep, "centers_meta.scaled_separation", k,
        [&](std::size_t i, std::size_t j) {
          return (std::sqrt(vol[i]) / xs(i) * row(i) - std::sqrt(vol[j]) / xs(j) * row(j)).squaredNorm();
        },
        [&](std::size_t, std::size_t) { return theta - 3.0 * root; }, applicable, false);
    add_pairwise_lower(
        rep, "centers_meta.normalized_separation", k,
        [&](std::size_t i, std::size_t j) {
          return (row(i) / std::sqrt(norm_sq(static_cast<Eigen::Index>(i))) -
                  row(j) / std::sqrt(norm_sq(static_cast<Eigen::Index>(j))))
              .squaredNorm();
        },
        [&](std::size_t, std::size_t) { return theta / 4.0 - 8.0 * std::sqrt(ps / theta); }, applicable, false);
    add_pairwise_lower(
        rep, "centers_meta.separation", k, [&](std::size_t i, std::size_t j) { return (row(i) - row(j)).squaredNorm(); },
        [&](std::size_t i, std::size_t j) {
          return (theta * theta - 20.0 * std::sqrt(theta * ps)) / (16.0 * std::min(vol[i], vol[j]));
        },
        applicable, false);
  }
  return rep;
}

CostIdentity kmeans_cost_identity_values(const TheoryContext& ctx, std::size_t l) {
  const Eigen::MatrixXd p = approximate_centers(ctx, l, false);
  const Eigen::MatrixXd f = leading(ctx, l);
  const Eigen::MatrixXd pts = embed_points(ctx.graph(), f);
  CostIdentity out{0.0, 0.0};
  for (Eigen::Index u = 0; u < pts.rows(); ++u) {
    const auto uu = static_cast<std::size_t>(u);
    out.embedded_cost +=
        ctx.graph().degree(uu) * (pts.row(u) - p.row(static_cast<Eigen::Index>(ctx.truth().label(uu)))).squaredNorm();
  }
  const MetaEmbedding me = truth_meta(ctx, l);
  out.projection_sum = projection_residuals(f, ctx.blow_up(me.vectors)).sum();
  return out;
}

double kmeans_cost_identity(const TheoryContext& ctx, std::size_t l) {
  const CostIdentity c = kmeans_cost_identity_values(ctx, l);
  if (std::abs(c.embedded_cost - c.projection_sum) > kSlackTolerance) {
    throw Error(ErrorCode::InvalidArgument, "cost identity broken: embedded cost " + format_real(c.embedded_cost) +
                                                " vs projection sum " + format_real(c.projection_sum));
  }
  return c.embedded_cost;
}

TheoryReport cost_identity_report(const TheoryContext& ctx, std::size_t l) {
  const std::size_t k = ctx.truth().k();
  const CostIdentity c = kmeans_cost_identity_values(ctx, l);
  TheoryReport rep;
  rep.add_identity("cost_identity.equality", c.embedded_cost, c.projection_sum);
  const double lam = spectral_gap_denominator(ctx, l);
  const MetaEmbedding me = truth_meta(ctx, l);
  rep.add_bound("cost_identity.psi_bound", c.embedded_cost, me.gamma.sum() / lam);
  if (l == k && ctx.eigen().count() > k) {
    const ExtReal ups = ctx.upsilon_surrogate();
    rep.add_bound("cost_identity.upsilon_bound", c.embedded_cost, static_cast<double>(k) * inverse(ups), true,
                  !ctx.upsilon_is_exact());
  }
  return rep;
}

double empirical_apt(const TheoryContext& ctx, const Clustering& output, std::size_t l,
                     const MisclassificationOptions& opts) {
  if (output.k() != ctx.truth().k() || output.size() != ctx.truth().size()) {
    throw Error(ErrorCode::KMismatch, "output and ground truth differ in k or size");
  }
  require_pairs(ctx, l);
  const PointSet ps = embedding_point_set(ctx.graph(), embed_points(ctx.graph(), leading(ctx, l)),
                                          opts.degree_weighted);
  const double achieved = kmeans_cost(ps, output);
  double best = std::min(achieved, kmeans_cost(ps, ctx.truth()));
  try {
    KMeansOptions ko;
    ko.restarts = std::max<std::size_t>(1, opts.apt_restarts);
    best = std::min(best, kmeans(ps, output.k(), ko, opts.seed).cost);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegeneratePoints) throw;
  }
  // Costs below round-off of the total weighted squared norm count as zero; a
  // positive cost against a zero optimum has no finite approximation ratio.
  const double zero = 1e-12 * ps.weights.dot(ps.points.rowwise().squaredNorm());
  if (best <= zero) return achieved <= zero ? 1.0 : std::numeric_limits<double>::infinity();
  return achieved / best;
}

namespace {

// sum_i vol(M_{sigma,i} △ S_i) / vol(S_i) with sigma(i) = argmin_j ||p^(j) - c_i||.
double nearest_center_ratio(const TheoryContext& ctx, const Clustering& output, const Eigen::MatrixXd& p,
                            std::size_t l, bool degree_weighted) {
  const std::size_t k = output.k();
  const PointSet ps = embedding_point_set(ctx.graph(), embed_points(ctx.graph(), leading(ctx, l)), degree_weighted);
  const Eigen::MatrixXd c = weighted_centroids(ps, output);
  std::vector<std::size_t> sigma(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
      const double d = (p.row(static_cast<Eigen::Index>(j)) - c.row(static_cast<Eigen::Index>(i))).squaredNorm();
      if (d < best) {
        best = d;
        sigma[i] = j;
      }
    }
  }
  const Eigen::MatrixXd conf = confusion_volumes(output, ctx.truth(), ctx.graph());
  const Eigen::VectorXd out_vol = conf.rowwise().sum();
  double ratio = 0.0;
  for (std::size_t t = 0; t < k; ++t) {
    double m_vol = 0.0;
    double inter = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (sigma[i] != t) continue;
      m_vol += out_vol(static_cast<Eigen::Index>(i));
      inter += conf(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t));
    }
    ratio += (m_vol + ctx.volumes()[t] - 2.0 * inter) / ctx.volumes()[t];
  }
  return ratio;
}

}  // namespace

TheoryReport misclassification_bound_check(const TheoryContext& ctx, const Clustering& output, std::size_t l,
                                           const MisclassificationOptions& opts) {
  const std::size_t k = ctx.truth().k();
  if (output.k() != k || output.size() != ctx.truth().size()) {
    throw Error(ErrorCode::KMismatch, "output has k=" + std::to_string(output.k()) + ", ground truth k=" +
                                          std::to_string(k));
  }
  if (l < 1 || l > k) throw Error(ErrorCode::BadL, "need 1 <= l <= k, got l=" + std::to_string(l));
  const double apt = opts.apt ? *opts.apt : empirical_apt(ctx, output, l, opts);
  const double vol_total = total_volume(ctx);
  const double symdiff = symdiff_volume(output, ctx.truth(), ctx.graph());
  const bool balanced = almost_balanced(ctx);
  const double kd = static_cast<double>(k);

  TheoryReport rep;
  // An infinite ratio leaves the bounds below without a hypothesis.
  const bool finite_apt = std::isfinite(apt);
  rep.add_bound("misclassification.apt", finite_apt ? ExtReal(apt) : ExtReal::infinity(), ExtReal::infinity(),
                finite_apt);
  const auto times_apt = [&](double c) { return finite_apt ? ExtReal((1.0 + apt) * c) : ExtReal::infinity(); };
  double spread = 0.0;
  for (double v : ctx.volumes()) spread = std::max({spread, v / (2.0 * vol_total / kd), (vol_total / (2.0 * kd)) / v});
  rep.add_bound("misclassification.almost_balanced", spread, 1.0, balanced);

  if (l == k) {
    spectral_gap_denominator(ctx, k);
    const ExtReal ups = ctx.upsilon_surrogate();
    const double inv = inverse(ups);
    const bool sur = !ctx.upsilon_is_exact();
    const Eigen::MatrixXd p = approximate_centers(ctx, k, true);
    rep.add_bound("misclassification.ratio_k", nearest_center_ratio(ctx, output, p, k, opts.degree_weighted),
                  times_apt(64.0 * kd * inv), finite_apt && ups.value() >= 32.0, sur);
    rep.add_bound("misclassification.volume_k", symdiff, times_apt(2176.0 * vol_total * inv),
                  finite_apt && balanced && ups.value() >= 2176.0 * (1.0 + apt), sur);
  }

  const double lam = spectral_gap_denominator(ctx, l);
  const MetaEmbedding me = truth_meta(ctx, l);
  std::optional<double> theta;
  if (k >= 2) {
    try {
      theta = distinguishability_theta(me).theta;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroEmbeddingNorm) throw;
    }
  }
  if (theta) {
    const double ps = me.gamma.sum() / lam;
    const double t = *theta;
    const Eigen::MatrixXd p = approximate_centers(ctx, l, false);
    rep.add_bound("misclassification.ratio_meta", nearest_center_ratio(ctx, output, p, l, opts.degree_weighted),
                  times_apt(64.0 * ps / (t * t)), finite_apt && ps <= t * t * t / 1600.0);
    rep.add_bound("misclassification.volume_meta", symdiff, times_apt(2176.0 * ps * vol_total / (kd * t * t)),
                  finite_apt && balanced && ps <= t * t * t / (2176.0 * (1.0 + apt)));
  } else {
    rep.add_bound("misclassification.volume_meta", symdiff, 0.0, false);
  }
  return rep;
}

TheoryReport full_report(const TheoryContext& ctx, const Clustering& output, std::size_t l,
                         const MisclassificationOptions& opts) {
  TheoryReport rep;
  rep.n = ctx.graph().num_vertices();
  rep.k = ctx.truth().k();
  rep.l = l;
  rep.seed = opts.seed;
  rep.append(verify_structure_theorem_k(ctx));
  rep.append(verify_structure_theorem_meta(ctx, l));
  rep.append(verify_meta_spectrum(ctx));
  rep.append(center_geometry_report(ctx, l));
  rep.append(cost_identity_report(ctx, l));
  rep.append(misclassification_bound_check(ctx, output, l, opts));
  return rep;
}

}  // namespace metasc
