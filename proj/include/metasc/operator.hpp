#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

namespace metasc {

/// Real symmetric linear operator applied to blocks of column vectors.
class SymmetricOperator {
 public:
  virtual ~SymmetricOperator() = default;

  virtual std::size_t size() const = 0;

  /// y = Op * x, column by column. y is resized as needed.
  virtual void apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const = 0;

  /// Dense materialization, if the operator supports it at its current size.
  virtual std::optional<Eigen::MatrixXd> dense() const { return std::nullopt; }
};

/// Operator backed by an explicit symmetric matrix.
class DenseSymmetricOperator final : public SymmetricOperator {
 public:
  explicit DenseSymmetricOperator(Eigen::MatrixXd m) : m_(std::move(m)) {}

  std::size_t size() const override { return static_cast<std::size_t>(m_.rows()); }
  void apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const override { y.noalias() = m_ * x; }
  std::optional<Eigen::MatrixXd> dense() const override { return m_; }

  const Eigen::MatrixXd& matrix() const { return m_; }

 private:
  Eigen::MatrixXd m_;
};

}  // namespace metasc
