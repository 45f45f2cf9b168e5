#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "metasc/operator.hpp"

namespace metasc {

/// Bottom eigenpairs of a symmetric operator.
struct EigenPairs {
  Eigen::VectorXd values;     // ascending
  Eigen::MatrixXd vectors;    // n x l, orthonormal columns
  Eigen::VectorXd residuals;  // ||A v_i - lambda_i v_i||

  std::size_t count() const { return static_cast<std::size_t>(values.size()); }
};

enum class EigenMethod {
  Auto,       // dense up to kDenseEigenLimit, Lanczos above
  Dense,
  Iterative,
};

inline constexpr std::size_t kDenseEigenLimit = 512;

struct EigenOptions {
  double tol = 1e-8;
  std::uint64_t seed = 0;
  EigenMethod method = EigenMethod::Auto;
  /// Block width of the Lanczos iteration (clamped to [1, l]). Exact
  /// multiplicities up to this width are resolved.
  std::size_t block_size = 4;
  /// Restart cap is `max_restarts_per_pair * l` cycles.
  std::size_t max_restarts_per_pair = 100;
};

/// Smallest `l` eigenpairs of a symmetric PSD operator.
///
/// Eigenvectors are sign-normalized so the largest-magnitude entry is positive.
/// Throws BadL for l outside [1, n], NoConvergence if the restart cap is hit.
EigenPairs bottom_eigenpairs(const SymmetricOperator& op, std::size_t l, const EigenOptions& opts = {});

/// Flips each column so its largest-magnitude entry (first on ties) is positive.
void normalize_signs(Eigen::MatrixXd& vectors);

}  // namespace metasc
