#include <sni/baselines.hpp>

#include <stdexcept>

#include <sni/errors.hpp>
#include <sni/matcore.hpp>
#include <sni/random.hpp>

namespace sni {

namespace {

SvdResult rayleigh_finalize(const Matrix& m, const Matrix& u, const Matrix& v, int iterations) {
  SmallSvd core = small_svd(u.transpose() * m * v);
  SvdResult out;
  out.u = u * core.u;
  out.d = std::move(core.d);
  out.v = v * core.v;
  out.converged = true;  // fixed work budget, no stopping criterion
  out.iterations = iterations;
  return out;
}

}  // namespace

SvdResult power_iteration_from(const Matrix& m, const Matrix& v0, int sweeps) {
  if (v0.rows() != m.cols() || v0.cols() > std::min(m.rows(), m.cols())) {
    throw std::invalid_argument("power_iteration: starting basis has wrong shape");
  }
  if (sweeps < 1) {
    throw std::invalid_argument("power_iteration: need at least one sweep");
  }
  Matrix v = v0;
  Matrix u;
  for (int i = 0; i < sweeps; ++i) {
    u = thin_qr(m * v).q;
    v = thin_qr(m.transpose() * u).q;
  }
  return rayleigh_finalize(m, u, v, sweeps);
}

SvdResult power_iteration(const Matrix& m, Index rank, int sweeps, std::uint64_t seed) {
  if (rank < 1 || rank > std::min(m.rows(), m.cols())) {
    throw std::invalid_argument("power_iteration: rank out of range");
  }
  Matrix v0 = thin_qr(seeded_gaussian(m.cols(), rank, seed)).q;
  return power_iteration_from(m, v0, sweeps);
}

SvdResult randomized_svd(const Matrix& m, Index rank, Index oversample, int power,
                         std::uint64_t seed) {
  const Index sketch_cols = rank + oversample;
  if (rank < 1 || oversample < 0 || sketch_cols > std::min(m.rows(), m.cols())) {
    throw std::invalid_argument("randomized_svd: rank + oversample out of range");
  }
  if (power < 0) {
    throw std::invalid_argument("randomized_svd: power must be >= 0");
  }

  Matrix sketch = m * seeded_gaussian(m.cols(), sketch_cols, seed);
  for (int i = 0; i < power; ++i) {
    sketch = m * (m.transpose() * sketch);
  }
  // Plain Householder basis: orthonormal and deterministic even when the
  // sketch is numerically rank deficient (exactly low-rank targets).
  Eigen::HouseholderQR<Matrix> qr(sketch);
  Matrix basis = qr.householderQ() * Matrix::Identity(m.rows(), sketch_cols);

  Matrix projected = basis.transpose() * m;  // sketch_cols x n
  Eigen::JacobiSVD<Matrix> svd(projected, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdResult out;
  out.u = (basis * svd.matrixU()).leftCols(rank);
  out.d = svd.singularValues().head(rank);
  out.v = svd.matrixV().leftCols(rank);
  out.converged = true;
  out.iterations = power;
  return out;
}

}  // namespace sni
