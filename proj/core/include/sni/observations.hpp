#pragma once

#include <cstddef>
#include <vector>

#include <sni/dense.hpp>

namespace sni {

struct Observation {
  Index row;
  Index col;
  double value;
};

/// A set of observed entries of an m x n matrix, stored in canonical order
/// (sorted by row, then column). Positions are unique and in bounds; values
/// are finite. Construction validates and canonicalizes.
class ObservationSet {
 public:
  ObservationSet(Index rows, Index cols, std::vector<Observation> entries);

  /// Observation set covering every entry of a dense matrix.
  static ObservationSet full_grid(const Matrix& m);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Observation>& entries() const { return entries_; }

 private:
  Index rows_;
  Index cols_;
  std::vector<Observation> entries_;
};

struct PredictionScore {
  double rmse = 0.0;
  std::size_t count = 0;
};

}  // namespace sni
