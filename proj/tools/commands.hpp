#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <sni/dense.hpp>

namespace sni::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitMaxIterations = 2;
inline constexpr int kExitUsage = 64;

/// Flag-level validation failure; main() maps it to kExitUsage.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct ApproxOptions {
  std::string method = "sni";
  Index m = 100;
  Index n = 80;
  Index rank = 5;
  std::string spectrum = "exact";
  std::uint64_t seed = 1;
  double tolerance = 1.0 - 1e-12;
  int max_iterations = 300;
  double stepsize = 1e-3;   // dlra
  int sweeps = 3;           // power
  Index oversample = 10;    // rsvd
  int power_q = 1;          // rsvd
  std::string out_dir;
};

struct CompleteOptions {
  std::string train_file;    // canonical observation format
  std::string ratings_file;  // MovieLens-layout ratings
  std::string delimiter = "tab";
  double test_fraction = 0.2;
  Index rank = 10;
  std::uint64_t seed = 1;
  double tolerance = 1.0 - 1e-12;
  int max_iterations = 300;
  std::string clamp;  // "lo,hi" or empty
  std::string out_dir;
};

struct BenchOptions {
  std::vector<std::string> methods = {"sni", "power", "rsvd", "dlra"};
  int trials = 3;
  Index m = 500;
  Index n = 400;
  Index rank = 20;
  std::string spectrum = "cliff:0.05:0.98";
  std::uint64_t seed = 1;
  double tolerance = 1.0 - 1e-12;
  int max_iterations = 300;
  double stepsize = 1e-3;
  int sweeps = 3;
  Index oversample = 10;
  int power_q = 0;  // single-shot sketch for the comparison table
  std::string out_file;
};

int run_approx(const ApproxOptions& opt);
int run_complete(const CompleteOptions& opt);
int run_bench(const BenchOptions& opt);

}  // namespace sni::cli
