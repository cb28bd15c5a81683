#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include <sni/datasets.hpp>
#include <sni/errors.hpp>
#include <sni/matcore.hpp>

#include "testutil.hpp"

using namespace sni;
namespace fs = std::filesystem;

namespace {

struct TempFile {
  fs::path path;
  explicit TempFile(const std::string& name, const std::string& contents) {
    path = fs::temp_directory_path() / name;
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::error_code ec; fs::remove(path, ec); }
};

}  // namespace

TEST_CASE("load_ratings: tab-delimited record") {
  TempFile file("sni_ratings_tab.txt", "196\t242\t3\t881250949\n");
  RatingsFileSpec spec;
  spec.path = file.path;
  RatingsData data = load_ratings(spec);
  CHECK(data.observations.size() == 1);
  CHECK(data.observations.rows() == 1);
  CHECK(data.observations.cols() == 1);
  CHECK(data.observations.entries()[0].value == 3.0);
  CHECK(data.user_ids[0] == 196);
  CHECK(data.item_ids[0] == 242);
  CHECK(data.malformed_lines == 0);
}

TEST_CASE("load_ratings: double-colon delimiter") {
  TempFile file("sni_ratings_colon.txt", "1::1193::5::978300760\n1::661::3::978302109\n");
  RatingsFileSpec spec;
  spec.path = file.path;
  spec.delimiter = RatingsDelimiter::kDoubleColon;
  RatingsData data = load_ratings(spec);
  CHECK(data.observations.size() == 2);
  CHECK(data.observations.rows() == 1);
  CHECK(data.observations.cols() == 2);
}

TEST_CASE("load_ratings: empty file is a format error") {
  TempFile file("sni_ratings_empty.txt", "");
  RatingsFileSpec spec;
  spec.path = file.path;
  CHECK_THROWS_AS(load_ratings(spec), FormatError);
}

TEST_CASE("load_ratings: missing file is an io error") {
  RatingsFileSpec spec;
  spec.path = "/nonexistent/sni/u.data";
  CHECK_THROWS_AS(load_ratings(spec), IoError);
}

TEST_CASE("load_ratings: duplicate pair keeps the last value") {
  TempFile file("sni_ratings_dup.txt", "1\t2\t3\t100\n1\t2\t5\t200\n");
  RatingsFileSpec spec;
  spec.path = file.path;
  RatingsData data = load_ratings(spec);
  CHECK(data.observations.size() == 1);
  CHECK(data.observations.entries()[0].value == 5.0);
}

TEST_CASE("load_ratings: malformed lines are counted and skipped") {
  TempFile file("sni_ratings_bad.txt", "1\t2\t3\t100\nnot-a-record\n4\tx\t2\t100\n2\t3\t4\t100\n");
  RatingsFileSpec spec;
  spec.path = file.path;
  RatingsData data = load_ratings(spec);
  CHECK(data.observations.size() == 2);
  CHECK(data.malformed_lines == 2);
}

TEST_CASE("split: partition size, determinism and cold-start guard") {
  std::vector<Observation> entries;
  for (Index u = 0; u < 50; ++u) {
    for (Index i = 0; i < 20; ++i) {
      entries.push_back({u, i, static_cast<double>((u + i) % 5 + 1)});
    }
  }
  ObservationSet obs(50, 20, std::move(entries));

  auto [train, test] = split(obs, 0.2, 7);
  CHECK(train.size() + test.size() == 1000);
  CHECK(test.size() >= 150);
  CHECK(test.size() <= 250);

  auto [train2, test2] = split(obs, 0.2, 7);
  CHECK(train.size() == train2.size());
  CHECK(test.size() == test2.size());
  for (std::size_t k = 0; k < test.size(); ++k) {
    CHECK(test.entries()[k].row == test2.entries()[k].row);
    CHECK(test.entries()[k].col == test2.entries()[k].col);
  }
}

TEST_CASE("split: user with exactly two ratings keeps one in train") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ObservationSet obs(3, 4, {{0, 0, 1.0}, {0, 1, 2.0}, {1, 0, 3.0}, {2, 1, 4.0}, {2, 3, 5.0}});
    auto [train, test] = split(obs, 0.9, seed);
    bool user0_in_train = false, user2_in_train = false;
    for (const Observation& e : train.entries()) {
      if (e.row == 0) user0_in_train = true;
      if (e.row == 2) user2_in_train = true;
    }
    CHECK(user0_in_train);
    CHECK(user2_in_train);
  }
}

TEST_CASE("split: disjoint partition across seeds") {
  std::vector<Observation> entries;
  for (Index u = 0; u < 30; ++u)
    for (Index i = 0; i < 10; ++i) entries.push_back({u, i, 1.0});
  ObservationSet obs(30, 10, std::move(entries));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto [train, test] = split(obs, 0.3, seed);
    std::set<std::pair<Index, Index>> seen;
    for (const Observation& e : train.entries()) seen.insert({e.row, e.col});
    for (const Observation& e : test.entries()) {
      CHECK(seen.count({e.row, e.col}) == 0);
      seen.insert({e.row, e.col});
    }
    CHECK(seen.size() == 300);
  }
}

TEST_CASE("make_synthetic: planted spectrum is recovered by the small SVD") {
  SyntheticSpec spec;
  spec.rows = 20;
  spec.cols = 20;
  spec.rank = 4;
  spec.spectrum = test::linear_spectrum(4, 8.0, 2.0);
  spec.seed = 5;
  SyntheticProblem problem = make_synthetic(spec);
  auto svd = small_svd(problem.m);
  for (Index i = 0; i < 4; ++i) {
    CHECK(std::abs(svd.d(i) - spec.spectrum(i)) < 1e-10);
  }
  for (Index i = 4; i < 20; ++i) {
    CHECK(svd.d(i) < 1e-10);
  }
}

TEST_CASE("make_synthetic: full observation fraction covers the grid") {
  SyntheticSpec spec;
  spec.rows = 7;
  spec.cols = 9;
  spec.rank = 2;
  spec.spectrum = test::linear_spectrum(2, 2.0, 1.0);
  SyntheticProblem problem = make_synthetic(spec);
  CHECK(problem.observed.size() == 63);
}

TEST_CASE("make_synthetic: deterministic for a fixed seed") {
  SyntheticSpec spec;
  spec.rows = 12;
  spec.cols = 10;
  spec.rank = 3;
  spec.spectrum = test::linear_spectrum(3, 3.0, 1.0);
  spec.noise_level = 0.1;
  spec.observation_fraction = 0.6;
  spec.seed = 9;
  SyntheticProblem a = make_synthetic(spec);
  SyntheticProblem b = make_synthetic(spec);
  CHECK(test::bit_equal(a.m, b.m));
  CHECK(a.observed.size() == b.observed.size());
}

TEST_CASE("make_synthetic: rejects bad spectra") {
  SyntheticSpec spec;
  spec.rows = 10;
  spec.cols = 10;
  spec.rank = 2;
  spec.spectrum = Vector(2);
  spec.spectrum << 1.0, 2.0;  // ascending
  CHECK_THROWS_AS(make_synthetic(spec), std::invalid_argument);
}

TEST_CASE("observation files: round-trip is exact") {
  SyntheticSpec spec;
  spec.rows = 15;
  spec.cols = 12;
  spec.rank = 3;
  spec.spectrum = test::linear_spectrum(3, 4.0, 1.0);
  spec.noise_level = 0.3;
  spec.observation_fraction = 0.5;
  spec.seed = 11;
  SyntheticProblem problem = make_synthetic(spec);

  fs::path path = fs::temp_directory_path() / "sni_obs_roundtrip.txt";
  save_observations(path, problem.observed);
  ObservationSet reloaded = load_observations(path);
  std::error_code ec;
  fs::remove(path, ec);

  REQUIRE(reloaded.size() == problem.observed.size());
  CHECK(reloaded.rows() == problem.observed.rows());
  CHECK(reloaded.cols() == problem.observed.cols());
  for (std::size_t k = 0; k < reloaded.size(); ++k) {
    CHECK(reloaded.entries()[k].row == problem.observed.entries()[k].row);
    CHECK(reloaded.entries()[k].col == problem.observed.entries()[k].col);
    CHECK(reloaded.entries()[k].value == problem.observed.entries()[k].value);
  }
}

TEST_CASE("observation files: header mismatch and missing file are reported") {
  CHECK_THROWS_AS(load_observations("/nonexistent/sni/observations.txt"), IoError);
  TempFile bad("sni_obs_bad.txt", "3 3 5\n0 0 1.0\n");
  CHECK_THROWS_AS(load_observations(bad.path), FormatError);
}
