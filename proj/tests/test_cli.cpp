#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <sni/datasets.hpp>

#include "testutil.hpp"

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return SNI_CLI_PATH; }

int run_cli(const std::string& args, const fs::path& stdout_file = {}) {
  std::string cmd = std::string("\"") + cli_path() + "\" " + args;
  if (!stdout_file.empty()) {
    cmd += " > \"" + stdout_file.string() + "\" 2>&1";
  } else {
    cmd += " > /dev/null 2>&1";
  }
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) {
    path = fs::temp_directory_path() / ("sni_cli_" + name);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
};

double report_metric(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + ": ", 0) == 0) {
      return std::stod(line.substr(key.size() + 2));
    }
  }
  FAIL("metric not found: ", key);
  return 0.0;
}

}  // namespace

TEST_CASE("cli approx: end-to-end sni run converges to the oracle") {
  TempDir dir("approx");
  const fs::path out = dir.path / "run";
  const int code = run_cli("approx --method sni --m 100 --n 80 --rank 5 --seed 1 --out \"" +
                           out.string() + "\"");
  CHECK(code == 0);
  const std::string report = slurp(out / "report.txt");
  CHECK(report_metric(report, "relative_error") <= 1e-8);
  CHECK(report.find("converged: true") != std::string::npos);
  CHECK(fs::exists(out / "trace.tsv"));
}

TEST_CASE("cli approx: validation failures exit with the usage code") {
  TempDir dir("usage");
  const fs::path out = dir.path / "run";
  CHECK(run_cli("approx --method sni --rank 0 --out \"" + out.string() + "\"") == 64);
  CHECK(run_cli("approx --method nosuch --out \"" + out.string() + "\"") == 64);
  CHECK(run_cli("approx --not-a-flag 3 --out \"" + out.string() + "\"") == 64);
  CHECK(run_cli("complete --out \"" + out.string() + "\"") == 64);
  CHECK(run_cli("bench --methods sni,nosuch") == 64);
}

TEST_CASE("cli approx: identical flags produce identical bytes") {
  TempDir dir("determinism");
  const fs::path out1 = dir.path / "a";
  const fs::path out2 = dir.path / "b";
  const std::string flags = "approx --method rsvd --m 60 --n 50 --rank 4 --seed 3 --out ";
  CHECK(run_cli(flags + "\"" + out1.string() + "\"") == 0);
  CHECK(run_cli(flags + "\"" + out2.string() + "\"") == 0);
  CHECK(slurp(out1 / "trace.tsv") == slurp(out2 / "trace.tsv"));

  // Reports echo the out path; compare after masking that one line.
  std::string r1 = slurp(out1 / "report.txt");
  std::string r2 = slurp(out2 / "report.txt");
  const auto strip_trace_line = [](std::string text) {
    const auto pos = text.find("trace_file: ");
    if (pos != std::string::npos) text.erase(pos);
    return text;
  };
  CHECK(strip_trace_line(r1) == strip_trace_line(r2));
}

TEST_CASE("cli complete: synthetic canonical observations recover the target") {
  TempDir dir("complete");
  sni::SyntheticSpec spec;
  spec.rows = 80;
  spec.cols = 70;
  spec.rank = 5;
  spec.spectrum = sni::test::linear_spectrum(5, 5.0, 1.0);
  spec.observation_fraction = 0.6;
  spec.seed = 21;
  sni::SyntheticProblem problem = sni::make_synthetic(spec);
  const fs::path data = dir.path / "observations.txt";
  sni::save_observations(data, problem.observed);

  const fs::path out = dir.path / "run";
  const int code = run_cli("complete --train \"" + data.string() +
                           "\" --rank 5 --seed 2 --max-iters 500 --test-fraction 0.2 --out \"" +
                           out.string() + "\"");
  CHECK(code == 0);
  const std::string report = slurp(out / "report.txt");
  CHECK(report_metric(report, "test_rmse") <= 1e-4);
}

TEST_CASE("cli complete: missing input file exits with the error code") {
  TempDir dir("missing");
  const fs::path out = dir.path / "run";
  const fs::path log = dir.path / "log.txt";
  std::string cmd = std::string("complete --train /nonexistent/sni/train.txt --rank 3 --out \"") +
                    out.string() + "\"";
  CHECK(run_cli(cmd, log) == 1);
  CHECK(slurp(log).find("/nonexistent/sni/train.txt") != std::string::npos);
}

TEST_CASE("cli complete: ratings-layout ingestion end to end") {
  TempDir dir("ratings");
  // Ratings built from a low-rank score model, written in the tab layout.
  sni::SyntheticSpec spec;
  spec.rows = 60;
  spec.cols = 50;
  spec.rank = 4;
  spec.spectrum = sni::test::linear_spectrum(4, 40.0, 10.0);
  spec.observation_fraction = 0.5;
  spec.seed = 31;
  sni::SyntheticProblem problem = sni::make_synthetic(spec);
  const fs::path data = dir.path / "u.data";
  {
    std::ofstream out(data);
    for (const sni::Observation& e : problem.observed.entries()) {
      out << (e.row + 1) << '\t' << (e.col + 1) << '\t' << e.value << '\t' << 881250949 << '\n';
    }
  }

  const fs::path out = dir.path / "run";
  const int code = run_cli("complete --ratings \"" + data.string() +
                           "\" --rank 4 --seed 2 --max-iters 400 --out \"" + out.string() + "\"");
  CHECK((code == 0 || code == 2));
  const std::string report = slurp(out / "report.txt");
  CHECK(report_metric(report, "test_rmse") < 1.0);
}

TEST_CASE("cli bench: ordering of the comparison table and determinism") {
  TempDir dir("bench");
  const fs::path table1 = dir.path / "table1.tsv";
  const fs::path table2 = dir.path / "table2.tsv";
  // Small desk problem keeps the unit suite quick; the acceptance suite runs
  // the full-size one.
  const std::string flags =
      "bench --methods sni,power,rsvd --trials 1 --m 120 --n 100 --rank 8 --seed 5 --out ";
  CHECK(run_cli(flags + "\"" + table1.string() + "\"") == 0);
  CHECK(run_cli(flags + "\"" + table2.string() + "\"") == 0);
  CHECK(slurp(table1) == slurp(table2));

  std::istringstream in(slurp(table1));
  std::string header;
  std::getline(in, header);
  CHECK(header == "method\tproblem\ttrials\tmean_relative_error");
  double sni_err = 0.0, power_err = 0.0, rsvd_err = 0.0;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string method, problem, trials, error;
    std::getline(fields, method, '\t');
    std::getline(fields, problem, '\t');
    std::getline(fields, trials, '\t');
    std::getline(fields, error, '\t');
    if (method == "sni") sni_err = std::stod(error);
    if (method == "power") power_err = std::stod(error);
    if (method == "rsvd") rsvd_err = std::stod(error);
  }
  CHECK(sni_err < power_err);
  CHECK(power_err < rsvd_err);
}
