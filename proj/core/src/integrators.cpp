#include <sni/integrators.hpp>

#include <chrono>
#include <cmath>
#include <stdexcept>

#include <sni/errors.hpp>
#include <sni/matcore.hpp>

namespace sni {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Shared body of the splitting step; `apply` multiplies by the residual dA,
// `apply_adjoint` by dA^T. Instantiated with dense products for the public
// sni_step and with oracle products inside the run loop.
template <class ApplyFn, class AdjointFn>
LowRankFactors splitting_step(const LowRankFactors& f, ApplyFn&& apply, AdjointFn&& apply_adjoint) {
  Matrix grad_v = apply(f.v);                  // dA V
  Matrix column_update = f.u * f.s + grad_v;   // K
  QrFactors left = thin_qr(column_update);
  Matrix core = left.r - left.q.transpose() * grad_v;
  Matrix row_update = f.v * core.transpose() + apply_adjoint(left.q);  // L
  QrFactors right = thin_qr(row_update);
  return {std::move(left.q), right.r.transpose(), std::move(right.q)};
}

SvdResult finalize(LowRankFactors f, ConvergenceTrace trace, bool converged, int iterations) {
  SmallSvd core = small_svd(f.s);
  SvdResult out;
  out.u = f.u * core.u;
  out.d = std::move(core.d);
  out.v = f.v * core.v;
  out.trace = std::move(trace);
  out.converged = converged;
  out.iterations = iterations;
  return out;
}

}  // namespace

void validate_config(const SolverConfig& cfg) {
  if (cfg.rank < 1) {
    throw std::invalid_argument("config: rank must be >= 1");
  }
  if (!(cfg.tolerance > 0.0 && cfg.tolerance < 1.0)) {
    throw std::invalid_argument("config: tolerance must lie in (0, 1)");
  }
  if (cfg.max_iterations < 1) {
    throw std::invalid_argument("config: max_iterations must be >= 1");
  }
  if (cfg.stepsize <= 0.0) {
    throw std::invalid_argument("config: stepsize must be positive");
  }
}

LowRankFactors sni_step(const LowRankFactors& f, const Matrix& da) {
  if (da.rows() != f.rows() || da.cols() != f.cols()) {
    throw std::invalid_argument("sni_step: direction dimensions do not match the factors");
  }
  return splitting_step(
      f, [&](const Matrix& x) { return Matrix(da * x); },
      [&](const Matrix& x) { return Matrix(da.transpose() * x); });
}

SvdResult sni_run(GradientOracle& oracle, const LowRankFactors& f0, const SolverConfig& cfg) {
  validate_config(cfg);
  validate_factors(f0);
  if (f0.rank() != cfg.rank) {
    throw std::invalid_argument("sni_run: initial factors do not match cfg.rank");
  }
  if (oracle.rows() != f0.rows() || oracle.cols() != f0.cols()) {
    throw std::invalid_argument("sni_run: oracle dimensions do not match the factors");
  }

  const auto start = Clock::now();
  ConvergenceTrace trace;
  trace.mode = cfg.mode;

  LowRankFactors f = f0;
  oracle.refresh(f);
  double prev_objective = oracle.objective();

  bool converged = false;
  int iterations = 0;
  for (int i = 1; i <= cfg.max_iterations; ++i) {
    LowRankFactors next;
    try {
      next = splitting_step(
          f, [&](const Matrix& x) { return oracle.apply(x); },
          [&](const Matrix& x) { return oracle.apply_adjoint(x); });
    } catch (const RankDeficientError& e) {
      throw RankDeficientRunError(std::string(e.what()) + " at iteration " + std::to_string(i),
                                  std::move(trace));
    }
    const double smin = sigma_min(f.v.transpose() * next.v);
    oracle.refresh(next);
    iterations = i;

    if (cfg.record_trace) {
      TraceRecord rec;
      rec.iteration = i;
      rec.error = cfg.mode == ObservationMode::kFullObservation ? oracle.residual_norm()
                                                                : oracle.objective();
      if (cfg.mode == ObservationMode::kFullObservation) {
        if (auto sub = oracle.subspace_errors(next)) {
          rec.subspace_error_u = sub->first;
          rec.subspace_error_v = sub->second;
        }
      }
      rec.sigma_min = smin;
      rec.seconds = seconds_since(start);
      trace.records.push_back(std::move(rec));
    }

    f = std::move(next);
    if (smin > cfg.tolerance) {
      converged = true;
      break;
    }
    if (cfg.mode == ObservationMode::kPartialObservation) {
      const double objective = oracle.objective();
      if (std::abs(prev_objective - objective) <
          kObjectiveFloor * std::max(prev_objective, 1e-300)) {
        converged = true;
        break;
      }
      prev_objective = objective;
    }
  }

  return finalize(std::move(f), std::move(trace), converged, iterations);
}

LowRankFactors dlra_step(const LowRankFactors& f, const Matrix& da, double stepsize) {
  if (stepsize <= 0.0) {
    throw std::invalid_argument("dlra_step: stepsize must be positive");
  }
  TangentComponents g = riemannian_gradient_components(f, da);
  Matrix u1 = f.u + stepsize * g.du;
  Matrix s1 = f.s + stepsize * g.ds;
  Matrix v1 = f.v + stepsize * g.dv;
  // Restore orthonormality; absorbing the triangular factors into the core
  // leaves the assembled matrix unchanged.
  QrFactors qu = thin_qr(u1);
  QrFactors qv = thin_qr(v1);
  return {std::move(qu.q), qu.r * s1 * qv.r.transpose(), std::move(qv.q)};
}

SvdResult dlra_run(const Matrix& m, const LowRankFactors& f0, const SolverConfig& cfg) {
  validate_config(cfg);
  validate_factors(f0);
  if (f0.rank() != cfg.rank) {
    throw std::invalid_argument("dlra_run: initial factors do not match cfg.rank");
  }
  if (m.rows() != f0.rows() || m.cols() != f0.cols()) {
    throw std::invalid_argument("dlra_run: target dimensions do not match the factors");
  }

  const auto start = Clock::now();
  ConvergenceTrace trace;
  trace.mode = ObservationMode::kFullObservation;

  LowRankFactors f = f0;
  bool converged = false;
  int iterations = 0;
  for (int i = 1; i <= cfg.max_iterations; ++i) {
    Matrix residual = m - assemble(f);
    LowRankFactors next = dlra_step(f, residual, cfg.stepsize);
    const double smin = sigma_min(f.v.transpose() * next.v);
    iterations = i;

    if (cfg.record_trace) {
      TraceRecord rec;
      rec.iteration = i;
      rec.error = fro_norm(m - assemble(next));
      rec.subspace_error_u = (next.u * (next.u.transpose() * m) - m).norm();
      rec.subspace_error_v = ((m * next.v) * next.v.transpose() - m).norm();
      rec.sigma_min = smin;
      rec.seconds = seconds_since(start);
      trace.records.push_back(std::move(rec));
    }

    f = std::move(next);
    if (smin > cfg.tolerance) {
      converged = true;
      break;
    }
  }

  return finalize(std::move(f), std::move(trace), converged, iterations);
}

std::pair<SvdResult, ConvergenceTrace> run_with_trace(Method method, const Matrix& m,
                                                      const LowRankFactors& f0,
                                                      const SolverConfig& cfg) {
  SvdResult result;
  if (method == Method::kSni) {
    FullObservationOracle oracle(m);
    result = sni_run(oracle, f0, cfg);
  } else {
    result = dlra_run(m, f0, cfg);
  }
  ConvergenceTrace trace = result.trace;
  return {std::move(result), std::move(trace)};
}

}  // namespace sni
