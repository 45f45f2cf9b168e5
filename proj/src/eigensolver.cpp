#include "metasc/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "metasc/error.hpp"
#include "metasc/rng.hpp"

namespace metasc {

void normalize_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    auto col = vectors.col(j);
    const double peak = col.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      if (std::abs(col(i)) >= peak * (1.0 - 1e-9)) {
        if (col(i) < 0.0) col *= -1.0;
        break;
      }
    }
  }
}

namespace {

Eigen::VectorXd residual_norms(const SymmetricOperator& op, const Eigen::VectorXd& values,
                               const Eigen::MatrixXd& vectors) {
  Eigen::MatrixXd av;
  op.apply(vectors, av);
  av -= vectors * values.asDiagonal();
  return av.colwise().norm().transpose();
}

EigenPairs dense_solve(const SymmetricOperator& op, const Eigen::MatrixXd& m, std::size_t l) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "dense symmetric eigensolver failed");
  const auto li = static_cast<Eigen::Index>(l);
  EigenPairs out;
  out.values = es.eigenvalues().head(li);
  out.vectors = es.eigenvectors().leftCols(li);
  normalize_signs(out.vectors);
  out.residuals = residual_norms(op, out.values, out.vectors);
  return out;
}

void fill_random(Rng& rng, Eigen::Ref<Eigen::VectorXd> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.uniform(-0.5, 0.5);
}

// Removes the components of w along the first `s` columns of v and along the
// `q` columns of `fresh`; two passes of classical Gram-Schmidt.
void orthogonalize(const Eigen::MatrixXd& v, Eigen::Index s, const Eigen::MatrixXd& fresh, Eigen::Index q,
                   Eigen::Ref<Eigen::VectorXd> w) {
  for (int pass = 0; pass < 2; ++pass) {
    if (s > 0) w.noalias() -= v.leftCols(s) * (v.leftCols(s).transpose() * w);
    if (q > 0) w.noalias() -= fresh.leftCols(q) * (fresh.leftCols(q).transpose() * w);
  }
}

// Block Lanczos with thick restarts and full reorthogonalization.
//
// The basis V and its image AV are kept explicitly, so the projected matrix
// is V^T A V and Ritz residuals are exact. Each cycle grows the basis block by
// block (next block = A * last block, orthogonalized), does a Rayleigh-Ritz
// step, and restarts from the best Ritz vectors plus their residual directions.
class BlockLanczos {
 public:
  BlockLanczos(const SymmetricOperator& op, std::size_t l, const EigenOptions& opts)
      : op_(op),
        n_(static_cast<Eigen::Index>(op.size())),
        l_(static_cast<Eigen::Index>(l)),
        b_(static_cast<Eigen::Index>(std::clamp<std::size_t>(opts.block_size, 1, l))),
        tol_(opts.tol),
        max_cycles_(std::max<std::size_t>(1, opts.max_restarts_per_pair * l)),
        rng_(opts.seed) {
    m_ = std::min(n_, std::max<Eigen::Index>(3 * l_, l_ + 30) + 2 * b_);
    keep_ = std::min(m_ - b_, l_ + (m_ - l_) / 2);
    keep_ = std::max(keep_, l_);
    v_.resize(n_, m_);
    av_.resize(n_, m_);
  }

  EigenPairs run() {
    Eigen::MatrixXd pending(n_, b_);
    for (Eigen::Index j = 0; j < b_; ++j) fill_random(rng_, pending.col(j));

    bool verifying = false;
    Eigen::VectorXd accepted;
    double worst = 0.0;
    for (std::size_t cycle = 0; cycle < max_cycles_; ++cycle) {
      expand(pending);

      const Eigen::MatrixXd h = symmetric_projection();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
      if (es.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "projected eigensolve failed");
      const Eigen::VectorXd theta = es.eigenvalues();
      const Eigen::MatrixXd& y = es.eigenvectors();

      const Eigen::Index wanted = std::min(l_, s_);
      Eigen::MatrixXd x = v_.leftCols(s_) * y.leftCols(wanted);
      Eigen::MatrixXd r = av_.leftCols(s_) * y.leftCols(wanted) - x * theta.head(wanted).asDiagonal();
      const Eigen::VectorXd res = r.colwise().norm().transpose();
      const double thresh = tol_ * std::max(1.0, std::abs(theta(wanted - 1)));
      worst = res.maxCoeff();
      const bool full_space = s_ == n_;
      const bool converged = wanted == l_ && (worst <= thresh || full_space);

      if (converged) {
        // A converged set is accepted only once a cycle seeded with fresh
        // random directions leaves it unchanged; this catches eigenvalues
        // whose multiplicity exceeds the block width.
        const Eigen::VectorXd current = theta.head(l_);
        if (full_space || (verifying && (current - accepted).cwiseAbs().maxCoeff() <= thresh)) {
          EigenPairs out;
          out.values = current;
          out.vectors = std::move(x);
          return out;
        }
        verifying = true;
        accepted = current;
      }

      // Thick restart.
      const Eigen::Index p = std::min(keep_, s_);
      Eigen::MatrixXd vk = v_.leftCols(s_) * y.leftCols(p);
      Eigen::MatrixXd avk = av_.leftCols(s_) * y.leftCols(p);
      v_.leftCols(p) = vk;
      av_.leftCols(p) = avk;
      s_ = p;

      pending.resize(n_, b_);
      if (converged) {
        for (Eigen::Index j = 0; j < b_; ++j) fill_random(rng_, pending.col(j));
      } else {
        // Residual directions of the least converged wanted Ritz vectors first.
        std::vector<Eigen::Index> order;
        for (Eigen::Index j = 0; j < wanted; ++j) {
          if (res(j) > thresh) order.push_back(j);
        }
        for (Eigen::Index j = wanted; j < p && static_cast<Eigen::Index>(order.size()) < b_; ++j) order.push_back(j);
        for (Eigen::Index j = 0; static_cast<Eigen::Index>(order.size()) < b_ && j < p; ++j) {
          if (std::find(order.begin(), order.end(), j) == order.end()) order.push_back(j);
        }
        for (Eigen::Index c = 0; c < b_; ++c) {
          if (c < static_cast<Eigen::Index>(order.size())) {
            const Eigen::Index j = order[static_cast<std::size_t>(c)];
            pending.col(c) = av_.col(j) - theta(j) * v_.col(j);
          } else {
            fill_random(rng_, pending.col(c));
          }
        }
      }
    }
    throw Error(ErrorCode::NoConvergence, "Lanczos hit the cap of " + std::to_string(max_cycles_) +
                                              " restart cycles; worst residual " + std::to_string(worst));
  }

 private:
  // Grows the basis to m columns starting from the raw block `pending`.
  void expand(Eigen::MatrixXd pending) {
    while (s_ < m_) {
      const Eigen::Index want = std::min<Eigen::Index>(pending.cols(), m_ - s_);
      Eigen::MatrixXd q(n_, want);
      Eigen::Index got = 0;
      for (Eigen::Index j = 0; j < want; ++j) {
        Eigen::VectorXd w = pending.col(j);
        const double before = w.norm();
        orthogonalize(v_, s_, q, got, w);
        double after = w.norm();
        // Rank deficiency (invariant subspace found): inject a random direction.
        for (int attempt = 0; attempt < 3 && !(after > 1e-10 * before && after > 1e-300); ++attempt) {
          fill_random(rng_, w);
          const double rnorm = w.norm();
          orthogonalize(v_, s_, q, got, w);
          after = w.norm();
          if (after > 1e-8 * rnorm) break;
          after = 0.0;
        }
        if (!(after > 0.0)) continue;
        q.col(got++) = w / after;
      }
      if (got == 0) break;
      Eigen::MatrixXd aq;
      op_.apply(q.leftCols(got), aq);
      v_.middleCols(s_, got) = q.leftCols(got);
      av_.middleCols(s_, got) = aq;
      s_ += got;
      pending = std::move(aq);
    }
  }

  Eigen::MatrixXd symmetric_projection() const {
    Eigen::MatrixXd h = v_.leftCols(s_).transpose() * av_.leftCols(s_);
    return 0.5 * (h + h.transpose());
  }

  const SymmetricOperator& op_;
  Eigen::Index n_;
  Eigen::Index l_;
  Eigen::Index b_;
  double tol_;
  std::size_t max_cycles_;
  Rng rng_;
  Eigen::Index m_ = 0;
  Eigen::Index keep_ = 0;
  Eigen::Index s_ = 0;
  Eigen::MatrixXd v_;
  Eigen::MatrixXd av_;
};

}  // namespace

EigenPairs bottom_eigenpairs(const SymmetricOperator& op, std::size_t l, const EigenOptions& opts) {
  const std::size_t n = op.size();
  if (l < 1 || l > n) {
    throw Error(ErrorCode::BadL, "requested " + std::to_string(l) + " eigenpairs of a " + std::to_string(n) +
                                     "-dimensional operator");
  }
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "eigensolver tolerance must be positive");

  EigenMethod method = opts.method;
  if (method == EigenMethod::Auto) method = n <= kDenseEigenLimit ? EigenMethod::Dense : EigenMethod::Iterative;

  if (method == EigenMethod::Dense) {
    auto m = op.dense();
    if (!m) throw Error(ErrorCode::TooLarge, "operator of size " + std::to_string(n) + " has no dense form");
    return dense_solve(op, *m, l);
  }

  EigenPairs out = BlockLanczos(op, l, opts).run();
  normalize_signs(out.vectors);
  out.residuals = residual_norms(op, out.values, out.vectors);
  return out;
}

}  // namespace metasc
