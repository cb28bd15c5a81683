#pragma once

#include <cstdint>

#include <sni/dense.hpp>

namespace sni {

/// A point Y = U S V^T on the manifold of rank-r matrices. U (m x r) and
/// V (n x r) have orthonormal columns; the core S (r x r) is nonsingular but
/// not required to be diagonal.
struct LowRankFactors {
  Matrix u;
  Matrix s;
  Matrix v;

  Index rank() const { return s.rows(); }
  Index rows() const { return u.rows(); }
  Index cols() const { return v.rows(); }
};

/// Checks the representation invariants (orthonormal U and V within `tol`,
/// consistent dimensions, finite entries); throws std::invalid_argument on
/// violation.
void validate_factors(const LowRankFactors& f, double tol = 1e-10);

/// Random point on the manifold: orthonormalized Gaussian U and V, identity
/// core.
LowRankFactors random_factors(Index rows, Index cols, Index rank, std::uint64_t seed);

/// The dense product U S V^T.
Matrix assemble(const LowRankFactors& f);

/// A tangent vector at a manifold point, in the gauge U^T dU = 0, V^T dV = 0.
struct TangentComponents {
  Matrix ds;  // r x r
  Matrix du;  // m x r
  Matrix dv;  // n x r
};

/// Orthogonal projection of an arbitrary m x n matrix onto the tangent space
/// at f: U U^T B - U U^T B V V^T + B V V^T, evaluated with thin products.
Matrix tangent_project(const LowRankFactors& f, const Matrix& b);

/// Component form of the projected (Riemannian) gradient for an ambient
/// direction dA:
///   dS = U^T dA V,  dU = (I - U U^T) dA V S^{-1},  dV = (I - V V^T) dA^T U S^{-T}.
/// The inverse is applied by solving r x r systems. Throws SingularCoreError
/// when sigma_min(S) falls below the rank tolerance.
TangentComponents riemannian_gradient_components(const LowRankFactors& f, const Matrix& da);

}  // namespace sni
