#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <sni/dense.hpp>
#include <sni/errors.hpp>
#include <sni/manifold.hpp>
#include <sni/oracle.hpp>

namespace sni {

enum class ObservationMode { kFullObservation, kPartialObservation };

struct SolverConfig {
  Index rank = 0;
  double tolerance = 1.0 - 1e-12;  // sigma_min stopping threshold, in (0, 1)
  int max_iterations = 300;
  std::uint64_t seed = 0;
  double stepsize = 1e-3;  // gradient-descent baseline only
  ObservationMode mode = ObservationMode::kFullObservation;
  bool record_trace = true;
};

void validate_config(const SolverConfig& cfg);

struct TraceRecord {
  int iteration = 0;
  /// ||Y_i - M||_F in full-observation mode, f1(Y_i) in partial mode.
  double error = 0.0;
  std::optional<double> subspace_error_u;  // ||U U^T M - M||_F (full mode)
  std::optional<double> subspace_error_v;  // ||M V V^T - M||_F (full mode)
  double sigma_min = 0.0;                  // sigma_min(V_{i-1}^T V_i)
  double seconds = 0.0;                    // wall clock, excluded from files
};

struct ConvergenceTrace {
  ObservationMode mode = ObservationMode::kFullObservation;
  std::vector<TraceRecord> records;
};

struct SvdResult {
  Matrix u;  // m x r orthonormal
  Vector d;  // r singular values, descending
  Matrix v;  // n x r orthonormal
  ConvergenceTrace trace;
  bool converged = false;
  int iterations = 0;
};

/// Rank-deficiency failure inside a solver loop; carries the convergence
/// trace recorded up to the failing iteration.
class RankDeficientRunError : public RankDeficientError {
 public:
  RankDeficientRunError(const std::string& what, ConvergenceTrace trace)
      : RankDeficientError(what), trace_(std::move(trace)) {}
  const ConvergenceTrace& trace() const { return trace_; }

 private:
  ConvergenceTrace trace_;
};

/// One splitting step at the iterate f, driven by the ambient direction dA
/// (the negative gradient / residual):
///   grad_v = dA V,  (U+, core) = thin_qr(U S + grad_v),
///   core  -= U+^T grad_v,
///   (V+, R) = thin_qr(V core^T + dA^T U+),  S+ = R^T.
/// The returned core is lower triangular, which is a valid representation
/// since the core is not required to be diagonal.
LowRankFactors sni_step(const LowRankFactors& f, const Matrix& da);

/// Outer loop: iterates sni_step on the oracle's residual, stopping when
/// sigma_min(V_{i-1}^T V_i) exceeds cfg.tolerance or the iteration budget is
/// exhausted. In partial-observation mode a relative objective-change floor
/// (|delta f1| / f1 < 1e-9) acts as a secondary stop. Ends with an SVD of the
/// final core so the result factors are singular vectors.
///
/// RankDeficientError aborts the run with the trace up to the failure
/// attached to the exception message context.
SvdResult sni_run(GradientOracle& oracle, const LowRankFactors& f0, const SolverConfig& cfg);

/// Secondary stopping threshold for partial-observation runs.
inline constexpr double kObjectiveFloor = 1e-9;

/// One step of the dynamical low-rank gradient-descent baseline: move the
/// factors along the Riemannian gradient components scaled by `stepsize`,
/// then restore orthonormality by thin QR with the triangular factors
/// absorbed into the core (which leaves the assembled matrix unchanged).
LowRankFactors dlra_step(const LowRankFactors& f, const Matrix& da, double stepsize);

/// Gradient-descent baseline loop on the fully observed objective.
SvdResult dlra_run(const Matrix& m, const LowRankFactors& f0, const SolverConfig& cfg);

enum class Method { kSni, kDlra };

/// Runs the chosen method on the fully observed target with per-iteration
/// trace recording. The numerical path is identical to the plain runs;
/// recording only stores values that the loop computes anyway.
std::pair<SvdResult, ConvergenceTrace> run_with_trace(Method method, const Matrix& m,
                                                      const LowRankFactors& f0,
                                                      const SolverConfig& cfg);

}  // namespace sni
