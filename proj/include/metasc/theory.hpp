#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "metasc/clustering.hpp"
#include "metasc/eigensolver.hpp"
#include "metasc/ext_real.hpp"
#include "metasc/graph.hpp"
#include "metasc/metagraph.hpp"

namespace metasc {

enum class CheckStatus { Satisfied, Violated, NotApplicable, Surrogate };

std::string_view to_string(CheckStatus s);

/// Slack tolerance: a statement holds when bound - lhs >= -kSlackTolerance.
inline constexpr double kSlackTolerance = 1e-8;

struct TheoryRecord {
  std::string id;
  ExtReal lhs;
  ExtReal bound;
  ExtReal slack;  // bound - lhs
  CheckStatus status;
};

struct TheoryReport {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t l = 0;
  std::uint64_t seed = 0;
  std::vector<TheoryRecord> records;

  /// Inequality `lhs <= bound`. `surrogate` marks a bound that uses the
  /// partition-based stand-in for rho(k); it is reported as Surrogate when it
  /// holds. A failed `applicable` precondition gives NotApplicable.
  void add_bound(std::string id, ExtReal lhs, ExtReal bound, bool applicable = true, bool surrogate = false);

  /// Identity `lhs == rhs` to `tol`; slack is tol - |lhs - rhs|.
  void add_identity(std::string id, double lhs, double rhs, double tol = kSlackTolerance);

  const TheoryRecord* find(const std::string& id) const;
  std::size_t count(CheckStatus s) const;
  bool any_violated() const { return count(CheckStatus::Violated) > 0; }

  void append(const TheoryReport& other);
};

/// Spectral data shared by all checks on one instance: bottom eigenpairs of
/// N_G (at least max(k, l) + 1 of them) and the supplied partition. The graph
/// is referenced and must outlive the context; the partition is copied.
class TheoryContext {
 public:
  TheoryContext(const WeightedGraph& g, Clustering truth, std::size_t pairs, const EigenOptions& opts = {});
  TheoryContext(const WeightedGraph& g, Clustering truth, EigenPairs eigen);
  TheoryContext(WeightedGraph&&, Clustering, std::size_t, const EigenOptions& = {}) = delete;
  TheoryContext(WeightedGraph&&, Clustering, EigenPairs) = delete;

  const WeightedGraph& graph() const { return *g_; }
  const Clustering& truth() const { return truth_; }
  const EigenPairs& eigen() const { return eigen_; }
  const std::vector<double>& volumes() const { return volumes_; }
  const std::vector<double>& conductances() const { return conductances_; }
  double max_conductance() const { return max_conductance_; }

  /// lambda_i with 1-based index.
  double lambda(std::size_t i) const { return eigen_.values(static_cast<Eigen::Index>(i - 1)); }

  /// Columns D^{1/2} chi_i / ||D^{1/2} chi_i||.
  Eigen::MatrixXd normalized_indicators() const;

  /// Columns sum_j D^{1/2} chi_j / ||D^{1/2} chi_j|| * g_i(j) for the given meta eigenvectors (k x m).
  Eigen::MatrixXd blow_up(const Eigen::MatrixXd& meta_vectors) const;

  /// lambda_{k+1} / max Phi(S_i); infinite when every cluster has zero conductance.
  ExtReal upsilon_surrogate() const;

  /// True when rho(k) is known exactly (small n) and the supplied partition attains it.
  bool upsilon_is_exact() const { return upsilon_exact_; }

 private:
  void init();

  const WeightedGraph* g_;
  Clustering truth_;
  EigenPairs eigen_;
  std::vector<double> volumes_;
  std::vector<double> conductances_;
  double max_conductance_ = 0.0;
  bool upsilon_exact_ = false;
};

/// Squared distances between the columns of `basis` and their projections
/// onto span(columns of `onto`); both with orthonormal columns.
Eigen::VectorXd projection_residuals(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& onto);

/// Structure theorem with k eigenvectors and normalized indicators.
TheoryReport verify_structure_theorem_k(const TheoryContext& ctx);

/// Structure theorem with l eigenvectors and meta-graph blow-ups.
TheoryReport verify_structure_theorem_meta(const TheoryContext& ctx, std::size_t l);

/// Lower bound lambda_i <= gamma_i for all i in [k], plus blow-up orthonormality
/// and quadratic-form transfer.
TheoryReport verify_meta_spectrum(const TheoryContext& ctx);

/// Approximate centers p^(i) (k x l) of the embedded clusters. For l == k with
/// `indicator_form` the normalized-indicator definition is used; otherwise the
/// meta-graph definition.
Eigen::MatrixXd approximate_centers(const TheoryContext& ctx, std::size_t l, bool indicator_form);

/// Norm and separation checks on the approximate centers.
TheoryReport center_geometry_report(const TheoryContext& ctx, std::size_t l);

struct CostIdentity {
  double embedded_cost;    // sum_i sum_{u in S_i} deg(u) ||F(u) - p^(i)||^2
  double projection_sum;   // sum_{j <= l} ||f_j - ghat_j||^2
};

/// Both sides of the k-means cost identity; throws if they differ by more than 1e-8.
CostIdentity kmeans_cost_identity_values(const TheoryContext& ctx, std::size_t l);

/// The embedded cost, checked against the projection sum.
double kmeans_cost_identity(const TheoryContext& ctx, std::size_t l);

/// Report form of the identity and of its Psi(l) bound.
TheoryReport cost_identity_report(const TheoryContext& ctx, std::size_t l);

struct MisclassificationOptions {
  /// Measured k-means approximation ratio; estimated when absent.
  std::optional<double> apt;
  std::size_t apt_restarts = 50;
  std::uint64_t seed = 0;
  bool degree_weighted = true;
};

/// Symmetric-difference volume against the misclassification theorems.
TheoryReport misclassification_bound_check(const TheoryContext& ctx, const Clustering& output, std::size_t l,
                                           const MisclassificationOptions& opts = {});

/// Empirical k-means approximation ratio of `output` on the l-dimensional embedding:
/// its cost divided by the best cost known (restarts plus the ground truth).
double empirical_apt(const TheoryContext& ctx, const Clustering& output, std::size_t l,
                     const MisclassificationOptions& opts);

/// Every check above for one instance.
TheoryReport full_report(const TheoryContext& ctx, const Clustering& output, std::size_t l,
                         const MisclassificationOptions& opts = {});

}  // namespace metasc
