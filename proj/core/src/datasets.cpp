#include <sni/datasets.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>

#include <sni/errors.hpp>
#include <sni/matcore.hpp>
#include <sni/random.hpp>
#include <sni/report.hpp>

namespace sni {

namespace {

std::vector<std::string_view> split_fields(std::string_view line, RatingsDelimiter delim) {
  const std::string_view sep = delim == RatingsDelimiter::kTab ? "\t" : "::";
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(sep, pos);
    if (next == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, next - pos));
    pos = next + sep.size();
  }
  return fields;
}

bool parse_ll(std::string_view s, long long& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !s.empty();
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  try {
    std::size_t used = 0;
    out = std::stod(std::string(s), &used);
    return used == s.size() && std::isfinite(out);
  } catch (const std::exception&) {
    return false;
  }
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') {
    line.remove_suffix(1);
  }
  return line;
}

}  // namespace

RatingsData load_ratings(const RatingsFileSpec& spec) {
  std::ifstream in(spec.path);
  if (!in) {
    throw IoError("cannot open ratings file: " + spec.path.string());
  }

  int user_at = 0, item_at = 1, rating_at = 2;
  for (int k = 0; k < 4; ++k) {
    if (spec.columns[k] == RatingsColumn::kUser) user_at = k;
    if (spec.columns[k] == RatingsColumn::kItem) item_at = k;
    if (spec.columns[k] == RatingsColumn::kRating) rating_at = k;
  }

  std::unordered_map<long long, Index> user_index;
  std::unordered_map<long long, Index> item_index;
  std::vector<long long> user_ids;
  std::vector<long long> item_ids;
  // Last occurrence of a (user, item) pair wins.
  std::map<std::pair<Index, Index>, double> cells;
  std::size_t malformed = 0;

  std::string raw;
  long line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = strip_cr(raw);
    if (line.empty()) {
      continue;
    }
    const auto fields = split_fields(line, spec.delimiter);
    long long user = 0, item = 0;
    double rating = 0.0;
    if (fields.size() < 3 || static_cast<std::size_t>(user_at) >= fields.size() ||
        static_cast<std::size_t>(item_at) >= fields.size() ||
        static_cast<std::size_t>(rating_at) >= fields.size() ||
        !parse_ll(fields[user_at], user) || !parse_ll(fields[item_at], item) ||
        !parse_double(fields[rating_at], rating)) {
      ++malformed;
      continue;
    }
    auto [uit, unew] = user_index.try_emplace(user, static_cast<Index>(user_ids.size()));
    if (unew) user_ids.push_back(user);
    auto [iit, inew] = item_index.try_emplace(item, static_cast<Index>(item_ids.size()));
    if (inew) item_ids.push_back(item);
    cells[{uit->second, iit->second}] = rating;
  }
  if (in.bad()) {
    throw IoError("read failure on ratings file: " + spec.path.string());
  }
  if (cells.empty()) {
    throw FormatError("no records in ratings file: " + spec.path.string(), line_no);
  }

  std::vector<Observation> entries;
  entries.reserve(cells.size());
  for (const auto& [pos, value] : cells) {
    entries.push_back({pos.first, pos.second, value});
  }
  return {ObservationSet(static_cast<Index>(user_ids.size()), static_cast<Index>(item_ids.size()),
                         std::move(entries)),
          std::move(user_ids), std::move(item_ids), malformed};
}

std::pair<ObservationSet, ObservationSet> split(const ObservationSet& obs, double test_fraction,
                                                std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument("split: test_fraction must lie in (0, 1)");
  }
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const auto& entries = obs.entries();
  std::vector<bool> in_test(entries.size());
  std::vector<std::size_t> row_train_count(obs.rows(), 0);
  std::vector<std::size_t> row_count(obs.rows(), 0);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    in_test[k] = unif(gen) < test_fraction;
    ++row_count[entries[k].row];
    if (!in_test[k]) ++row_train_count[entries[k].row];
  }
  // Cold-start guard: a user with two or more ratings keeps at least one in
  // train; move that user's first drawn entry back.
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Index row = entries[k].row;
    if (in_test[k] && row_count[row] >= 2 && row_train_count[row] == 0) {
      in_test[k] = false;
      ++row_train_count[row];
    }
  }

  std::vector<Observation> train, test;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    (in_test[k] ? test : train).push_back(entries[k]);
  }
  return {ObservationSet(obs.rows(), obs.cols(), std::move(train)),
          ObservationSet(obs.rows(), obs.cols(), std::move(test))};
}

Matrix SyntheticProblem::oracle_rank(Index r) const {
  if (r < 1 || r > spectrum.size()) {
    throw std::invalid_argument("oracle_rank: rank outside the planted spectrum");
  }
  return truth_u.leftCols(r) * spectrum.head(r).asDiagonal() * truth_v.leftCols(r).transpose();
}

SyntheticProblem make_synthetic(const SyntheticSpec& spec) {
  const Index minmn = std::min(spec.rows, spec.cols);
  const Index width = spec.spectrum.size();
  if (spec.rank < 1 || spec.rank > minmn) {
    throw std::invalid_argument("make_synthetic: rank out of range");
  }
  if (width < spec.rank || width > minmn) {
    throw std::invalid_argument("make_synthetic: spectrum length out of range");
  }
  for (Index i = 0; i < width; ++i) {
    if (spec.spectrum(i) <= 0.0 || (i > 0 && spec.spectrum(i) > spec.spectrum(i - 1))) {
      throw std::invalid_argument("make_synthetic: spectrum must be positive and descending");
    }
  }
  if (!(spec.observation_fraction > 0.0 && spec.observation_fraction <= 1.0)) {
    throw std::invalid_argument("make_synthetic: observation fraction must lie in (0, 1]");
  }

  Matrix truth_u = thin_qr(seeded_gaussian(spec.rows, width, spec.seed)).q;
  Matrix truth_v = thin_qr(seeded_gaussian(spec.cols, width, spec.seed ^ 0xd1b54a32d192ed03ull)).q;
  Matrix m = truth_u * spec.spectrum.asDiagonal() * truth_v.transpose();
  if (spec.noise_level > 0.0) {
    m += spec.noise_level * seeded_gaussian(spec.rows, spec.cols, spec.seed ^ 0x94d049bb133111ebull);
  }

  std::vector<Observation> entries;
  if (spec.observation_fraction >= 1.0) {
    entries.reserve(static_cast<std::size_t>(spec.rows) * static_cast<std::size_t>(spec.cols));
    for (Index i = 0; i < spec.rows; ++i) {
      for (Index j = 0; j < spec.cols; ++j) {
        entries.push_back({i, j, m(i, j)});
      }
    }
  } else {
    std::mt19937_64 gen(spec.seed ^ 0xbf58476d1ce4e5b9ull);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (Index i = 0; i < spec.rows; ++i) {
      for (Index j = 0; j < spec.cols; ++j) {
        if (unif(gen) < spec.observation_fraction) {
          entries.push_back({i, j, m(i, j)});
        }
      }
    }
  }

  return {std::move(m),
          ObservationSet(spec.rows, spec.cols, std::move(entries)),
          std::move(truth_u),
          spec.spectrum,
          std::move(truth_v)};
}

Vector cliff_spectrum(Index count, Index head, double head_hi, double head_lo, double gap,
                      double decay) {
  if (head < 1 || head > count) {
    throw std::invalid_argument("cliff_spectrum: head out of range");
  }
  Vector s(count);
  for (Index i = 0; i < head; ++i) {
    s(i) = head == 1 ? head_hi
                     : head_hi + (head_lo - head_hi) * static_cast<double>(i) /
                                     static_cast<double>(head - 1);
  }
  double tail = head_lo * gap;
  for (Index i = head; i < count; ++i) {
    s(i) = tail;
    tail *= decay;
  }
  return s;
}

void save_observations(const std::filesystem::path& path, const ObservationSet& obs) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  out << obs.rows() << ' ' << obs.cols() << ' ' << obs.size() << '\n';
  for (const Observation& e : obs.entries()) {
    out << e.row << ' ' << e.col << ' ' << format_double(e.value) << '\n';
  }
  if (!out) {
    throw IoError("write failure: " + path.string());
  }
}

ObservationSet load_observations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open observation file: " + path.string());
  }
  std::string header;
  if (!std::getline(in, header)) {
    throw FormatError("empty observation file: " + path.string(), 1);
  }
  std::istringstream hs(header);
  Index rows = 0, cols = 0;
  std::size_t count = 0;
  if (!(hs >> rows >> cols >> count)) {
    throw FormatError("bad observation header: " + path.string(), 1);
  }
  std::vector<Observation> entries;
  entries.reserve(count);
  std::string line;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (strip_cr(line).empty()) continue;
    std::istringstream ls{line};
    Observation e{};
    if (!(ls >> e.row >> e.col >> e.value)) {
      throw FormatError("bad observation record", line_no);
    }
    entries.push_back(e);
  }
  if (entries.size() != count) {
    throw FormatError("observation count mismatch: header says " + std::to_string(count) +
                          ", file has " + std::to_string(entries.size()),
                      line_no);
  }
  return ObservationSet(rows, cols, std::move(entries));
}

}  // namespace sni
