#pragma once

#include <cstdint>

#include <sni/dense.hpp>
#include <sni/integrators.hpp>

namespace sni {

/// Block power (subspace) iteration: alternate U <- orth(M V), V <- orth(M^T U)
/// for `sweeps` rounds from a seeded random start, then diagonalize the
/// Rayleigh core U^T M V. Throws RankDeficientError if a sketch collapses.
SvdResult power_iteration(const Matrix& m, Index rank, int sweeps, std::uint64_t seed);

/// Same iteration from an explicit starting basis V0 (n x r, orthonormal).
SvdResult power_iteration_from(const Matrix& m, const Matrix& v0, int sweeps);

/// Randomized SVD: sketch Y = (M M^T)^q M G with an n x (rank + oversample)
/// Gaussian G, orthonormalize, project, small SVD, truncate to `rank`.
SvdResult randomized_svd(const Matrix& m, Index rank, Index oversample = 10, int power = 1,
                         std::uint64_t seed = 0);

}  // namespace sni
