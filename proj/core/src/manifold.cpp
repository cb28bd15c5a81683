#include <sni/manifold.hpp>

#include <stdexcept>
#include <string>

#include <Eigen/LU>

#include <sni/errors.hpp>
#include <sni/matcore.hpp>
#include <sni/random.hpp>

namespace sni {

void validate_factors(const LowRankFactors& f, double tol) {
  const Index r = f.rank();
  if (r < 1 || f.s.cols() != r) {
    throw std::invalid_argument("factors: core must be square with r >= 1");
  }
  if (f.u.cols() != r || f.v.cols() != r) {
    throw std::invalid_argument("factors: U and V must have r columns");
  }
  if (f.rows() < r || f.cols() < r) {
    throw std::invalid_argument("factors: need m >= r and n >= r");
  }
  if (!f.u.allFinite() || !f.s.allFinite() || !f.v.allFinite()) {
    throw std::invalid_argument("factors: non-finite entries");
  }
  const Matrix eye = Matrix::Identity(r, r);
  if ((f.u.transpose() * f.u - eye).norm() > tol) {
    throw std::invalid_argument("factors: U columns not orthonormal");
  }
  if ((f.v.transpose() * f.v - eye).norm() > tol) {
    throw std::invalid_argument("factors: V columns not orthonormal");
  }
}

LowRankFactors random_factors(Index rows, Index cols, Index rank, std::uint64_t seed) {
  // Distinct streams for the two sides; seed ^ 1 keeps a single user-facing seed.
  Matrix u = thin_qr(seeded_gaussian(rows, rank, seed)).q;
  Matrix v = thin_qr(seeded_gaussian(cols, rank, seed ^ 0x9e3779b97f4a7c15ull)).q;
  return {std::move(u), Matrix::Identity(rank, rank), std::move(v)};
}

Matrix assemble(const LowRankFactors& f) { return (f.u * f.s) * f.v.transpose(); }

Matrix tangent_project(const LowRankFactors& f, const Matrix& b) {
  if (b.rows() != f.rows() || b.cols() != f.cols()) {
    throw std::invalid_argument("tangent_project: dimension mismatch");
  }
  // U U^T B + (B V - U U^T B V) V^T, never materializing I - U U^T.
  Matrix ut_b = f.u.transpose() * b;            // r x n
  Matrix bv = b * f.v;                          // m x r
  Matrix ut_bv = f.u.transpose() * bv;          // r x r
  return f.u * ut_b + (bv - f.u * ut_bv) * f.v.transpose();
}

TangentComponents riemannian_gradient_components(const LowRankFactors& f, const Matrix& da) {
  if (da.rows() != f.rows() || da.cols() != f.cols()) {
    throw std::invalid_argument("riemannian_gradient_components: dimension mismatch");
  }
  const Index r = f.rank();
  Eigen::JacobiSVD<Matrix> core_svd(f.s);
  const double smin = core_svd.singularValues()(r - 1);
  const double smax = core_svd.singularValues()(0);
  if (smin <= rank_tolerance(smax, r)) {
    throw SingularCoreError("gradient components: core is numerically singular (sigma_min=" +
                            std::to_string(smin) + ")");
  }

  Matrix da_v = da * f.v;              // m x r
  Matrix ds = f.u.transpose() * da_v;  // r x r

  Matrix w = da_v - f.u * ds;  // (I - U U^T) dA V
  // du = w S^{-1}  <=>  S^T du^T = w^T
  Matrix du = f.s.transpose().partialPivLu().solve(w.transpose()).transpose();

  Matrix dat_u = da.transpose() * f.u;                 // n x r
  Matrix z = dat_u - f.v * (f.v.transpose() * dat_u);  // (I - V V^T) dA^T U
  // dv = z S^{-T}  <=>  S dv^T = z^T
  Matrix dv = f.s.partialPivLu().solve(z.transpose()).transpose();

  return {std::move(ds), std::move(du), std::move(dv)};
}

}  // namespace sni
