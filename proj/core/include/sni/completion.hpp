#pragma once

#include <optional>
#include <utility>

#include <Eigen/SparseCore>

#include <sni/integrators.hpp>
#include <sni/manifold.hpp>
#include <sni/observations.hpp>

namespace sni {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Residual M_ij - (U S V^T)_ij on the observed support, each entry computed
/// as an O(r) dot product without assembling Y.
SparseMatrix sparse_residual(const ObservationSet& obs, const LowRankFactors& f);

/// f1(Y) = 1/2 * sum over observed entries of (M_ij - Y_ij)^2.
double objective_f1(const ObservationSet& obs, const LowRankFactors& f);

/// SNI in completion mode: same step structure as the full-observation run,
/// with residual products evaluated in O(|Omega| r). A fully observed set
/// reproduces the full-observation run exactly.
SvdResult sni_complete(const ObservationSet& obs, const LowRankFactors& f0, SolverConfig cfg);

/// RMSE of the model's predictions over a held-out observation set, with
/// predictions optionally clamped to a value range first. Throws
/// EmptyTestSetError when the set has no entries.
PredictionScore evaluate_rmse(const ObservationSet& test, const LowRankFactors& f,
                              std::optional<std::pair<double, double>> clamp = std::nullopt);

}  // namespace sni
