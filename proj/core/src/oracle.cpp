#include <sni/oracle.hpp>

#include <stdexcept>

#include <sni/matcore.hpp>

// FullObservationOracle and SparseResidualOracle keep their loops aligned:
// residual entries come from the same row-dot expression and the products
// accumulate scaled rows in the same (row, column) order. A sparse oracle
// over the full grid therefore performs the identical sequence of floating
// point operations as the dense one, which is what makes the completion
// solver's full-observation reduction exact.

namespace sni {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

RowMajor us_product(const LowRankFactors& f) { return RowMajor(f.u * f.s); }

}  // namespace

// ---------------------------------------------------------------------------
// FullObservationOracle

FullObservationOracle::FullObservationOracle(Matrix target)
    : target_(std::move(target)), target_rm_(target_) {
  if (!target_.allFinite()) {
    throw std::invalid_argument("oracle: target has non-finite entries");
  }
  residual_.resize(target_.rows(), target_.cols());
}

void FullObservationOracle::refresh(const LowRankFactors& f) {
  const RowMajor us = us_product(f);
  const RowMajor vr(f.v);
  double acc = 0.0;
  for (Index i = 0; i < target_rm_.rows(); ++i) {
    for (Index j = 0; j < target_rm_.cols(); ++j) {
      const double rij = target_rm_(i, j) - us.row(i).dot(vr.row(j));
      residual_(i, j) = rij;
      acc += rij * rij;
    }
  }
  norm_sq_ = acc;
}

Matrix FullObservationOracle::apply(const Matrix& x) const {
  const RowMajor xr(x);
  RowMajor out = RowMajor::Zero(residual_.rows(), x.cols());
  for (Index i = 0; i < residual_.rows(); ++i) {
    for (Index j = 0; j < residual_.cols(); ++j) {
      out.row(i) += residual_(i, j) * xr.row(j);
    }
  }
  return Matrix(out);
}

Matrix FullObservationOracle::apply_adjoint(const Matrix& x) const {
  const RowMajor xr(x);
  RowMajor out = RowMajor::Zero(residual_.cols(), x.cols());
  for (Index i = 0; i < residual_.rows(); ++i) {
    for (Index j = 0; j < residual_.cols(); ++j) {
      out.row(j) += residual_(i, j) * xr.row(i);
    }
  }
  return Matrix(out);
}

double FullObservationOracle::residual_norm() const { return std::sqrt(norm_sq_); }

double FullObservationOracle::objective() const { return 0.5 * norm_sq_; }

std::optional<std::pair<double, double>> FullObservationOracle::subspace_errors(
    const LowRankFactors& f) const {
  const double left = (f.u * (f.u.transpose() * target_) - target_).norm();
  const double right = ((target_ * f.v) * f.v.transpose() - target_).norm();
  return std::make_pair(left, right);
}

// ---------------------------------------------------------------------------
// SparseResidualOracle

SparseResidualOracle::SparseResidualOracle(const ObservationSet& obs)
    : rows_(obs.rows()), cols_(obs.cols()) {
  const auto& entries = obs.entries();
  row_.reserve(entries.size());
  col_.reserve(entries.size());
  value_.reserve(entries.size());
  for (const Observation& e : entries) {
    row_.push_back(e.row);
    col_.push_back(e.col);
    value_.push_back(e.value);
  }
  residual_.resize(entries.size());
}

void SparseResidualOracle::refresh(const LowRankFactors& f) {
  const RowMajor us = us_product(f);
  const RowMajor vr(f.v);
  double acc = 0.0;
  for (std::size_t k = 0; k < value_.size(); ++k) {
    const double rij = value_[k] - us.row(row_[k]).dot(vr.row(col_[k]));
    residual_[k] = rij;
    acc += rij * rij;
  }
  norm_sq_ = acc;
}

Matrix SparseResidualOracle::apply(const Matrix& x) const {
  const RowMajor xr(x);
  RowMajor out = RowMajor::Zero(rows_, x.cols());
  for (std::size_t k = 0; k < residual_.size(); ++k) {
    out.row(row_[k]) += residual_[k] * xr.row(col_[k]);
  }
  return Matrix(out);
}

Matrix SparseResidualOracle::apply_adjoint(const Matrix& x) const {
  const RowMajor xr(x);
  RowMajor out = RowMajor::Zero(cols_, x.cols());
  for (std::size_t k = 0; k < residual_.size(); ++k) {
    out.row(col_[k]) += residual_[k] * xr.row(row_[k]);
  }
  return Matrix(out);
}

double SparseResidualOracle::residual_norm() const { return std::sqrt(norm_sq_); }

double SparseResidualOracle::objective() const { return 0.5 * norm_sq_; }

}  // namespace sni
