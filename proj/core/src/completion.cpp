#include <sni/completion.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <sni/errors.hpp>

namespace sni {

ObservationSet::ObservationSet(Index rows, Index cols, std::vector<Observation> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ < 1 || cols_ < 1) {
    throw std::invalid_argument("observations: dimensions must be positive");
  }
  for (const Observation& e : entries_) {
    if (e.row < 0 || e.row >= rows_ || e.col < 0 || e.col >= cols_) {
      throw std::invalid_argument("observations: index (" + std::to_string(e.row) + ", " +
                                  std::to_string(e.col) + ") out of bounds");
    }
    if (!std::isfinite(e.value)) {
      throw std::invalid_argument("observations: non-finite value");
    }
  }
  std::sort(entries_.begin(), entries_.end(), [](const Observation& a, const Observation& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t k = 1; k < entries_.size(); ++k) {
    if (entries_[k].row == entries_[k - 1].row && entries_[k].col == entries_[k - 1].col) {
      throw std::invalid_argument("observations: duplicate position (" +
                                  std::to_string(entries_[k].row) + ", " +
                                  std::to_string(entries_[k].col) + ")");
    }
  }
}

ObservationSet ObservationSet::full_grid(const Matrix& m) {
  std::vector<Observation> entries;
  entries.reserve(static_cast<std::size_t>(m.rows()) * static_cast<std::size_t>(m.cols()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      entries.push_back({i, j, m(i, j)});
    }
  }
  return ObservationSet(m.rows(), m.cols(), std::move(entries));
}

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_dims(const ObservationSet& obs, const LowRankFactors& f, const char* who) {
  if (obs.rows() != f.rows() || obs.cols() != f.cols()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  }
}

}  // namespace

SparseMatrix sparse_residual(const ObservationSet& obs, const LowRankFactors& f) {
  require_dims(obs, f, "sparse_residual");
  const RowMajor us(f.u * f.s);
  const RowMajor vr(f.v);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(obs.size());
  for (const Observation& e : obs.entries()) {
    triplets.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col),
                          e.value - us.row(e.row).dot(vr.row(e.col)));
  }
  SparseMatrix out(obs.rows(), obs.cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

double objective_f1(const ObservationSet& obs, const LowRankFactors& f) {
  require_dims(obs, f, "objective_f1");
  const RowMajor us(f.u * f.s);
  const RowMajor vr(f.v);
  double acc = 0.0;
  for (const Observation& e : obs.entries()) {
    const double rij = e.value - us.row(e.row).dot(vr.row(e.col));
    acc += rij * rij;
  }
  return 0.5 * acc;
}

SvdResult sni_complete(const ObservationSet& obs, const LowRankFactors& f0, SolverConfig cfg) {
  cfg.mode = ObservationMode::kPartialObservation;
  SparseResidualOracle oracle(obs);
  return sni_run(oracle, f0, cfg);
}

PredictionScore evaluate_rmse(const ObservationSet& test, const LowRankFactors& f,
                              std::optional<std::pair<double, double>> clamp) {
  require_dims(test, f, "evaluate_rmse");
  if (test.size() == 0) {
    throw EmptyTestSetError("evaluate_rmse: empty test set");
  }
  const RowMajor us(f.u * f.s);
  const RowMajor vr(f.v);
  double acc = 0.0;
  for (const Observation& e : test.entries()) {
    double pred = us.row(e.row).dot(vr.row(e.col));
    if (clamp) {
      pred = std::clamp(pred, clamp->first, clamp->second);
    }
    const double diff = pred - e.value;
    acc += diff * diff;
  }
  return {std::sqrt(acc / static_cast<double>(test.size())), test.size()};
}

}  // namespace sni
