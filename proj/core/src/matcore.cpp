#include <sni/matcore.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include <sni/errors.hpp>

namespace sni {

namespace {

void require_finite(const Matrix& a, const char* who) {
  if (!a.allFinite()) {
    throw std::invalid_argument(std::string(who) + ": input has non-finite entries");
  }
}

}  // namespace

QrFactors thin_qr(const Matrix& k) {
  const Index m = k.rows();
  const Index r = k.cols();
  if (m < r || r < 1) {
    throw std::invalid_argument("thin_qr: need m >= r >= 1, got " + std::to_string(m) + " x " +
                                std::to_string(r));
  }
  require_finite(k, "thin_qr");

  Eigen::HouseholderQR<Matrix> qr(k);
  Matrix q = qr.householderQ() * Matrix::Identity(m, r);
  Matrix rfac = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();

  // Numerical rank check on the triangular factor (same singular values as k).
  Eigen::JacobiSVD<Matrix> svd(rfac);
  const double smin = svd.singularValues()(r - 1);
  const double smax = svd.singularValues()(0);
  if (smin <= rank_tolerance(smax, r)) {
    throw RankDeficientError("thin_qr: numerical rank below " + std::to_string(r) +
                             " (sigma_min=" + std::to_string(smin) + ")");
  }

  // Positive-diagonal convention makes the factorization unique.
  for (Index j = 0; j < r; ++j) {
    if (rfac(j, j) < 0.0) {
      rfac.row(j) = -rfac.row(j);
      q.col(j) = -q.col(j);
    }
  }
  return {std::move(q), std::move(rfac)};
}

SmallSvd small_svd(const Matrix& s) {
  const Index r = s.rows();
  if (r != s.cols()) {
    throw std::invalid_argument("small_svd: input must be square");
  }
  if (r > kSmallSvdCap) {
    throw std::invalid_argument("small_svd: side exceeds cap " + std::to_string(kSmallSvdCap));
  }
  require_finite(s, "small_svd");

  Eigen::JacobiSVD<Matrix> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

double sigma_min(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("sigma_min: input must be square");
  }
  require_finite(a, "sigma_min");
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(a.rows() - 1);
}

double fro_norm(const Matrix& a) {
  require_finite(a, "fro_norm");
  return std::sqrt(a.squaredNorm());
}

}  // namespace sni
