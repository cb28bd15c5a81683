#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <utility>

#include <sni/sni.hpp>

namespace sni::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Spectrum grammar: "exact" (linear rank..1, exactly rank values),
/// "cliff:GAP:DECAY" (linear head 100..10 over `rank` values, geometric tail),
/// or an explicit comma-separated list.
Vector parse_spectrum(const std::string& text, Index minmn, Index rank) {
  if (text == "exact") {
    Vector s(rank);
    for (Index i = 0; i < rank; ++i) {
      s(i) = static_cast<double>(rank - i);
    }
    return s;
  }
  if (text.rfind("cliff", 0) == 0) {
    double gap = 0.05, decay = 0.98;
    if (text != "cliff") {
      if (std::sscanf(text.c_str(), "cliff:%lf:%lf", &gap, &decay) != 2 || gap <= 0.0 ||
          decay <= 0.0 || decay > 1.0) {
        throw UsageError("bad cliff spectrum spec: " + text);
      }
    }
    return cliff_spectrum(minmn, rank, 100.0, 10.0, gap, decay);
  }
  std::vector<double> values;
  std::istringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    try {
      values.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw UsageError("bad spectrum value: " + field);
    }
  }
  if (static_cast<Index>(values.size()) < rank || static_cast<Index>(values.size()) > minmn) {
    throw UsageError("spectrum must list between rank and min(m, n) values");
  }
  Vector s(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    s(static_cast<Index>(i)) = values[i];
  }
  return s;
}

std::optional<std::pair<double, double>> parse_clamp(const std::string& text) {
  if (text.empty()) {
    return std::nullopt;
  }
  double lo = 0.0, hi = 0.0;
  if (std::sscanf(text.c_str(), "%lf,%lf", &lo, &hi) != 2 || lo > hi) {
    throw UsageError("bad clamp range, expected lo,hi: " + text);
  }
  return std::make_pair(lo, hi);
}

void check_problem_dims(Index m, Index n, Index rank) {
  if (rank < 1) {
    throw UsageError("rank must be >= 1");
  }
  if (m < rank || n < rank) {
    throw UsageError("need m >= rank and n >= rank");
  }
}

struct MethodRun {
  SvdResult result;
  double seconds = 0.0;
};

MethodRun run_method(const std::string& method, const Matrix& m, Index rank, std::uint64_t seed,
                     double tolerance, int max_iterations, double stepsize, int sweeps,
                     Index oversample, int power_q) {
  SolverConfig cfg;
  cfg.rank = rank;
  cfg.tolerance = tolerance;
  cfg.max_iterations = max_iterations;
  cfg.seed = seed;
  cfg.stepsize = stepsize;

  const auto start = Clock::now();
  MethodRun run;
  if (method == "sni") {
    FullObservationOracle oracle(m);
    run.result = sni_run(oracle, random_factors(m.rows(), m.cols(), rank, seed), cfg);
  } else if (method == "dlra") {
    run.result = dlra_run(m, random_factors(m.rows(), m.cols(), rank, seed), cfg);
  } else if (method == "power") {
    run.result = power_iteration(m, rank, sweeps, seed);
  } else if (method == "rsvd") {
    run.result = randomized_svd(m, rank, oversample, power_q, seed);
  } else {
    throw UsageError("unknown method: " + method);
  }
  run.seconds = elapsed_s(start);
  return run;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  out << contents;
  if (!out) {
    throw IoError("write failure: " + path.string());
  }
}

fs::path prepare_out_dir(const std::string& out_dir) {
  if (out_dir.empty()) {
    throw UsageError("--out is required");
  }
  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory: " + dir.string());
  }
  return dir;
}

void emit_run_outputs(const fs::path& dir, const std::string& out_flag, RunReport report,
                      const ConvergenceTrace& trace) {
  report.trace_file = out_flag + "/trace.tsv";

  std::ostringstream trace_text;
  write_trace(trace_text, trace);
  write_file(dir / "trace.tsv", trace_text.str());
  write_file(dir / "report.txt", format_report(report));

  // Console copy; timing stays out of the files so reruns are byte-identical.
  std::cout << format_report(report);
  std::cout << "wall_time_s: " << report.wall_time_s << "\n";
}

}  // namespace

int run_approx(const ApproxOptions& opt) {
  check_problem_dims(opt.m, opt.n, opt.rank);
  if (opt.max_iterations < 1 || !(opt.tolerance > 0.0 && opt.tolerance < 1.0)) {
    throw UsageError("need max-iters >= 1 and tol in (0, 1)");
  }
  if (opt.sweeps < 1 || opt.power_q < 0 || opt.oversample < 0) {
    throw UsageError("need sweeps >= 1, power-q >= 0, oversample >= 0");
  }

  SyntheticSpec spec;
  spec.rows = opt.m;
  spec.cols = opt.n;
  spec.rank = opt.rank;
  spec.spectrum = parse_spectrum(opt.spectrum, std::min(opt.m, opt.n), opt.rank);
  spec.seed = opt.seed;
  SyntheticProblem problem = make_synthetic(spec);
  const Matrix oracle_best = problem.oracle_rank(opt.rank);
  const double oracle_norm = oracle_best.norm();

  MethodRun run = run_method(opt.method, problem.m, opt.rank, opt.seed, opt.tolerance,
                             opt.max_iterations, opt.stepsize, opt.sweeps, opt.oversample,
                             opt.power_q);
  const Matrix approx = run.result.u * run.result.d.asDiagonal() * run.result.v.transpose();
  const double rel_error = (approx - oracle_best).norm() / oracle_norm;

  RunReport report;
  report.method = opt.method;
  report.config = {{"m", std::to_string(opt.m)},
                   {"n", std::to_string(opt.n)},
                   {"rank", std::to_string(opt.rank)},
                   {"spectrum", opt.spectrum},
                   {"seed", std::to_string(opt.seed)},
                   {"tolerance", format_double(opt.tolerance)},
                   {"max_iterations", std::to_string(opt.max_iterations)}};
  if (opt.method == "dlra") {
    report.config.emplace_back("stepsize", format_double(opt.stepsize));
  } else if (opt.method == "power") {
    report.config.emplace_back("sweeps", std::to_string(opt.sweeps));
  } else if (opt.method == "rsvd") {
    report.config.emplace_back("oversample", std::to_string(opt.oversample));
    report.config.emplace_back("power_q", std::to_string(opt.power_q));
  }
  report.metrics = {{"relative_error", format_double(rel_error)}};
  report.iterations = run.result.iterations;
  report.converged = run.result.converged;
  report.wall_time_s = run.seconds;

  emit_run_outputs(prepare_out_dir(opt.out_dir), opt.out_dir, report, run.result.trace);
  return run.result.converged ? kExitOk : kExitMaxIterations;
}

int run_complete(const CompleteOptions& opt) {
  if (opt.train_file.empty() == opt.ratings_file.empty()) {
    throw UsageError("exactly one of --train or --ratings is required");
  }
  if (opt.rank < 1 || opt.max_iterations < 1 ||
      !(opt.tolerance > 0.0 && opt.tolerance < 1.0) ||
      !(opt.test_fraction > 0.0 && opt.test_fraction < 1.0)) {
    throw UsageError("need rank >= 1, max-iters >= 1, tol in (0, 1), test-fraction in (0, 1)");
  }
  const auto clamp = parse_clamp(opt.clamp);

  ObservationSet all = [&] {
    if (!opt.train_file.empty()) {
      return load_observations(opt.train_file);
    }
    RatingsFileSpec spec;
    spec.path = opt.ratings_file;
    if (opt.delimiter == "tab") {
      spec.delimiter = RatingsDelimiter::kTab;
    } else if (opt.delimiter == "::") {
      spec.delimiter = RatingsDelimiter::kDoubleColon;
    } else {
      throw UsageError("delimiter must be 'tab' or '::'");
    }
    return load_ratings(spec).observations;
  }();
  if (all.rows() < opt.rank || all.cols() < opt.rank) {
    throw UsageError("rank exceeds the data dimensions");
  }

  auto [train, test] = split(all, opt.test_fraction, opt.seed);

  SolverConfig cfg;
  cfg.rank = opt.rank;
  cfg.tolerance = opt.tolerance;
  cfg.max_iterations = opt.max_iterations;
  cfg.seed = opt.seed;
  cfg.mode = ObservationMode::kPartialObservation;

  LowRankFactors f0 = random_factors(all.rows(), all.cols(), opt.rank, opt.seed);
  const double f1_initial = objective_f1(train, f0);

  const auto start = Clock::now();
  SvdResult result = sni_complete(train, f0, cfg);
  const double seconds = elapsed_s(start);

  LowRankFactors fitted{result.u, Matrix(result.d.asDiagonal()), result.v};
  const double f1_final = objective_f1(train, fitted);
  PredictionScore score = evaluate_rmse(test, fitted, clamp);

  RunReport report;
  report.method = "sni";
  report.config = {{"train", opt.train_file.empty() ? opt.ratings_file : opt.train_file},
                   {"rows", std::to_string(all.rows())},
                   {"cols", std::to_string(all.cols())},
                   {"observations", std::to_string(all.size())},
                   {"test_fraction", format_double(opt.test_fraction)},
                   {"rank", std::to_string(opt.rank)},
                   {"seed", std::to_string(opt.seed)},
                   {"tolerance", format_double(opt.tolerance)},
                   {"max_iterations", std::to_string(opt.max_iterations)},
                   {"clamp", opt.clamp.empty() ? "none" : opt.clamp}};
  report.metrics = {{"objective_initial", format_double(f1_initial)},
                    {"objective_final", format_double(f1_final)},
                    {"test_rmse", format_double(score.rmse)},
                    {"test_count", std::to_string(score.count)}};
  report.iterations = result.iterations;
  report.converged = result.converged;
  report.wall_time_s = seconds;

  emit_run_outputs(prepare_out_dir(opt.out_dir), opt.out_dir, report, result.trace);
  return result.converged ? kExitOk : kExitMaxIterations;
}

int run_bench(const BenchOptions& opt) {
  check_problem_dims(opt.m, opt.n, opt.rank);
  if (opt.trials < 1) {
    throw UsageError("trials must be >= 1");
  }
  if (opt.methods.empty()) {
    throw UsageError("at least one method is required");
  }
  for (const std::string& method : opt.methods) {
    if (method != "sni" && method != "dlra" && method != "power" && method != "rsvd") {
      throw UsageError("unknown method: " + method);
    }
  }

  const std::string problem_label = std::to_string(opt.m) + "x" + std::to_string(opt.n) + "r" +
                                    std::to_string(opt.rank);

  std::vector<double> mean_errors(opt.methods.size(), 0.0);
  std::vector<double> mean_seconds(opt.methods.size(), 0.0);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(trial);
    SyntheticSpec spec;
    spec.rows = opt.m;
    spec.cols = opt.n;
    spec.rank = opt.rank;
    spec.spectrum = parse_spectrum(opt.spectrum, std::min(opt.m, opt.n), opt.rank);
    spec.seed = seed;
    SyntheticProblem problem = make_synthetic(spec);
    const Matrix oracle_best = problem.oracle_rank(opt.rank);
    const double oracle_norm = oracle_best.norm();

    for (std::size_t k = 0; k < opt.methods.size(); ++k) {
      MethodRun run = run_method(opt.methods[k], problem.m, opt.rank, seed, opt.tolerance,
                                 opt.max_iterations, opt.stepsize, opt.sweeps, opt.oversample,
                                 opt.power_q);
      const Matrix approx = run.result.u * run.result.d.asDiagonal() * run.result.v.transpose();
      mean_errors[k] += (approx - oracle_best).norm() / oracle_norm;
      mean_seconds[k] += run.seconds;
    }
  }

  std::ostringstream table;
  table << "method\tproblem\ttrials\tmean_relative_error\n";
  char buf[32];
  for (std::size_t k = 0; k < opt.methods.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.6e", mean_errors[k] / opt.trials);
    table << opt.methods[k] << '\t' << problem_label << '\t' << opt.trials << '\t' << buf << '\n';
  }

  std::cout << table.str();
  for (std::size_t k = 0; k < opt.methods.size(); ++k) {
    std::cout << "wall_time_s " << opt.methods[k] << ": " << mean_seconds[k] / opt.trials << "\n";
  }
  if (!opt.out_file.empty()) {
    const fs::path path(opt.out_file);
    if (path.has_parent_path()) {
      std::error_code ec;
      fs::create_directories(path.parent_path(), ec);
    }
    write_file(path, table.str());
  }
  return kExitOk;
}

}  // namespace sni::cli
