#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include <sni/errors.hpp>

#include "commands.hpp"

namespace cli = sni::cli;

int main(int argc, char** argv) {
  CLI::App app{"Best rank-r approximation and matrix completion on the fixed-rank manifold"};
  app.require_subcommand(1);

  cli::ApproxOptions approx;
  CLI::App* approx_cmd = app.add_subcommand("approx", "Low-rank approximation of a synthetic target");
  approx_cmd->add_option("--method", approx.method, "sni | dlra | power | rsvd");
  approx_cmd->add_option("--m", approx.m, "target rows");
  approx_cmd->add_option("--n", approx.n, "target columns");
  approx_cmd->add_option("--rank", approx.rank, "target rank r");
  approx_cmd->add_option("--spectrum", approx.spectrum,
                         "'exact', 'cliff[:gap:decay]', or comma list");
  approx_cmd->add_option("--seed", approx.seed, "random seed");
  approx_cmd->add_option("--tol", approx.tolerance, "sigma_min stopping tolerance in (0, 1)");
  approx_cmd->add_option("--max-iters", approx.max_iterations, "iteration budget");
  approx_cmd->add_option("--stepsize", approx.stepsize, "dlra stepsize");
  approx_cmd->add_option("--sweeps", approx.sweeps, "power iteration sweeps");
  approx_cmd->add_option("--oversample", approx.oversample, "rsvd oversampling");
  approx_cmd->add_option("--power-q", approx.power_q, "rsvd power passes");
  approx_cmd->add_option("--out", approx.out_dir, "output directory")->required();

  cli::CompleteOptions complete;
  CLI::App* complete_cmd = app.add_subcommand("complete", "Low-rank matrix completion");
  complete_cmd->add_option("--train", complete.train_file, "canonical observation file");
  complete_cmd->add_option("--ratings", complete.ratings_file, "ratings file (MovieLens layout)");
  complete_cmd->add_option("--delimiter", complete.delimiter, "'tab' or '::'");
  complete_cmd->add_option("--test-fraction", complete.test_fraction, "held-out fraction");
  complete_cmd->add_option("--rank", complete.rank, "model rank");
  complete_cmd->add_option("--seed", complete.seed, "random seed");
  complete_cmd->add_option("--tol", complete.tolerance, "sigma_min stopping tolerance");
  complete_cmd->add_option("--max-iters", complete.max_iterations, "iteration budget");
  complete_cmd->add_option("--clamp", complete.clamp, "prediction range lo,hi");
  complete_cmd->add_option("--out", complete.out_dir, "output directory")->required();

  cli::BenchOptions bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Method comparison on a synthetic problem");
  bench_cmd->add_option("--methods", bench.methods, "subset of sni,dlra,power,rsvd")
      ->delimiter(',');
  bench_cmd->add_option("--trials", bench.trials, "independent trials");
  bench_cmd->add_option("--m", bench.m, "target rows");
  bench_cmd->add_option("--n", bench.n, "target columns");
  bench_cmd->add_option("--rank", bench.rank, "target rank r");
  bench_cmd->add_option("--spectrum", bench.spectrum, "spectrum spec");
  bench_cmd->add_option("--seed", bench.seed, "base seed (trial t uses seed + t)");
  bench_cmd->add_option("--tol", bench.tolerance, "sni stopping tolerance");
  bench_cmd->add_option("--max-iters", bench.max_iterations, "sni/dlra iteration budget");
  bench_cmd->add_option("--stepsize", bench.stepsize, "dlra stepsize");
  bench_cmd->add_option("--sweeps", bench.sweeps, "power iteration sweeps");
  bench_cmd->add_option("--oversample", bench.oversample, "rsvd oversampling");
  bench_cmd->add_option("--power-q", bench.power_q, "rsvd power passes");
  bench_cmd->add_option("--out", bench.out_file, "table output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  try {
    if (approx_cmd->parsed()) {
      return cli::run_approx(approx);
    }
    if (complete_cmd->parsed()) {
      return cli::run_complete(complete);
    }
    return cli::run_bench(bench);
  } catch (const cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return cli::kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitError;
  }
}
