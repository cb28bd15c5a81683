#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include <sni/dense.hpp>
#include <sni/manifold.hpp>
#include <sni/observations.hpp>

namespace sni {

enum class RatingsDelimiter { kTab, kDoubleColon };
enum class RatingsColumn { kUser, kItem, kRating, kTimestamp };

/// Layout of a ratings text file (MovieLens 100K / 1M style): one record per
/// line, 1-based external ids, four delimited fields.
struct RatingsFileSpec {
  std::filesystem::path path;
  RatingsDelimiter delimiter = RatingsDelimiter::kTab;
  std::array<RatingsColumn, 4> columns = {RatingsColumn::kUser, RatingsColumn::kItem,
                                          RatingsColumn::kRating, RatingsColumn::kTimestamp};
};

struct RatingsData {
  ObservationSet observations;          // dense 0-based indices
  std::vector<long long> user_ids;      // dense index -> external id
  std::vector<long long> item_ids;
  std::size_t malformed_lines = 0;
};

/// Parses a ratings file. External ids are remapped to dense 0-based indices
/// in order of first appearance; duplicate (user, item) pairs keep the last
/// occurrence; malformed lines are counted and skipped. Throws IoError when
/// the file cannot be read and FormatError when it yields no records.
RatingsData load_ratings(const RatingsFileSpec& spec);

/// Seeded disjoint train/test partition. Every user with at least two
/// ratings keeps at least one in train.
std::pair<ObservationSet, ObservationSet> split(const ObservationSet& obs, double test_fraction,
                                                std::uint64_t seed);

struct SyntheticSpec {
  Index rows = 0;
  Index cols = 0;
  Index rank = 0;           // head rank of the planted model
  Vector spectrum;          // positive, descending; length <= min(rows, cols)
  double noise_level = 0.0;
  double observation_fraction = 1.0;
  std::uint64_t seed = 0;
};

struct SyntheticProblem {
  Matrix m;
  ObservationSet observed;
  Matrix truth_u;   // rows x spectrum.size(), orthonormal
  Vector spectrum;
  Matrix truth_v;   // cols x spectrum.size(), orthonormal

  /// The planted best rank-r approximation (the error-metric oracle).
  Matrix oracle_rank(Index r) const;
};

/// Random target with prescribed spectrum: M = U* diag(spectrum) V*^T plus
/// optional Gaussian noise, with a seeded uniform subsample of the entries
/// when observation_fraction < 1.
SyntheticProblem make_synthetic(const SyntheticSpec& spec);

/// Spectrum helpers for the benchmark problems: `head` linearly spaced values
/// from head_hi down to head_lo followed by a geometric tail starting at
/// head_lo * gap.
Vector cliff_spectrum(Index count, Index head, double head_hi, double head_lo, double gap,
                      double decay);

/// Canonical observation file: header "m n count", then "row col value" per
/// line, 0-based, sorted by (row, col). Values round-trip exactly.
void save_observations(const std::filesystem::path& path, const ObservationSet& obs);
ObservationSet load_observations(const std::filesystem::path& path);

}  // namespace sni
