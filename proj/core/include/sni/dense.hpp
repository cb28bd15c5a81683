#pragma once

#include <Eigen/Dense>

namespace sni {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative threshold below which an r-column matrix is treated as rank
/// deficient: 1e-12 * sigma_max * r.
inline double rank_tolerance(double sigma_max, Index r) {
  return 1e-12 * sigma_max * static_cast<double>(r);
}

inline bool all_finite(const Matrix& a) { return a.allFinite(); }

}  // namespace sni
