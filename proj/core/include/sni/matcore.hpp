#pragma once

#include <sni/dense.hpp>

namespace sni {

struct QrFactors {
  Matrix q;  // m x r, orthonormal columns
  Matrix r;  // r x r, upper triangular with positive diagonal
};

/// Thin QR factorization of an m x r matrix (m >= r) with the sign convention
/// that the triangular factor has a strictly positive diagonal, which makes
/// the factorization unique and runs reproducible.
///
/// Throws RankDeficientError when the numerical rank of the input drops
/// below r (smallest singular value <= rank_tolerance(sigma_max, r)).
QrFactors thin_qr(const Matrix& k);

struct SmallSvd {
  Matrix u;  // r x r orthonormal
  Vector d;  // r singular values, descending
  Matrix v;  // r x r orthonormal
};

/// Dimension cap for small_svd inputs.
inline constexpr Index kSmallSvdCap = 4096;

/// Full SVD of a small square matrix. Input side must not exceed kSmallSvdCap.
SmallSvd small_svd(const Matrix& s);

/// Smallest singular value of a square matrix.
double sigma_min(const Matrix& a);

/// Frobenius norm.
double fro_norm(const Matrix& a);

}  // namespace sni
