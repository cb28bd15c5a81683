#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <sni/dense.hpp>
#include <sni/manifold.hpp>
#include <sni/observations.hpp>

namespace sni {

/// Negative-gradient supplier for the solver loops. refresh() re-evaluates
/// the residual dA = -grad f(Y) at the current iterate; apply/apply_adjoint
/// multiply by dA without ever assembling the step matrices densely where the
/// objective is sparse.
class GradientOracle {
 public:
  virtual ~GradientOracle() = default;

  virtual Index rows() const = 0;
  virtual Index cols() const = 0;

  virtual void refresh(const LowRankFactors& f) = 0;

  /// dA * x for an n x r block.
  virtual Matrix apply(const Matrix& x) const = 0;
  /// dA^T * x for an m x r block.
  virtual Matrix apply_adjoint(const Matrix& x) const = 0;

  /// Frobenius norm of the residual at the last refresh.
  virtual double residual_norm() const = 0;
  /// Objective value at the last refresh (1/2 * residual_norm^2).
  virtual double objective() const = 0;

  /// (||U U^T M - M||_F, ||M V V^T - M||_F) when the full target is known.
  virtual std::optional<std::pair<double, double>> subspace_errors(const LowRankFactors&) const {
    return std::nullopt;
  }
};

// The two oracles below compute residual entries and matrix products with
// matched per-entry kernels, so a partial-observation run over the full grid
// reproduces the full-observation run bit for bit.

/// Residual oracle for the fully observed objective 1/2 ||M - Y||_F^2.
class FullObservationOracle final : public GradientOracle {
 public:
  explicit FullObservationOracle(Matrix target);

  Index rows() const override { return target_.rows(); }
  Index cols() const override { return target_.cols(); }

  void refresh(const LowRankFactors& f) override;
  Matrix apply(const Matrix& x) const override;
  Matrix apply_adjoint(const Matrix& x) const override;
  double residual_norm() const override;
  double objective() const override;
  std::optional<std::pair<double, double>> subspace_errors(const LowRankFactors& f) const override;

  const Matrix& target() const { return target_; }

 private:
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Matrix target_;
  RowMajor target_rm_;
  RowMajor residual_;
  double norm_sq_ = 0.0;
};

/// Residual oracle for the partially observed objective
/// f1(Y) = 1/2 ||P_Omega(M) - P_Omega(Y)||_F^2; products cost O(|Omega| r).
class SparseResidualOracle final : public GradientOracle {
 public:
  explicit SparseResidualOracle(const ObservationSet& obs);

  Index rows() const override { return rows_; }
  Index cols() const override { return cols_; }

  void refresh(const LowRankFactors& f) override;
  Matrix apply(const Matrix& x) const override;
  Matrix apply_adjoint(const Matrix& x) const override;
  double residual_norm() const override;
  double objective() const override;

 private:
  Index rows_;
  Index cols_;
  std::vector<Index> row_;     // canonical (row-major) order
  std::vector<Index> col_;
  std::vector<double> value_;  // observed values
  std::vector<double> residual_;
  double norm_sq_ = 0.0;
};

}  // namespace sni
