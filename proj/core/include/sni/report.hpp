#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <sni/integrators.hpp>

namespace sni {

/// Result summary for one solver run. Serialized report files are
/// reproducible byte for byte: wall time is carried in the struct (and echoed
/// to the console by the CLI) but never written into report or trace files.
struct RunReport {
  std::string method;
  std::vector<std::pair<std::string, std::string>> config;   // flag echo, in order
  std::vector<std::pair<std::string, std::string>> metrics;  // final metrics, in order
  int iterations = 0;
  bool converged = false;
  double wall_time_s = 0.0;
  std::string trace_file;
};

/// Shortest decimal form that round-trips a double exactly.
std::string format_double(double value);

/// "key: value" lines in a fixed order; deterministic for fixed inputs.
std::string format_report(const RunReport& report);

/// Tab-separated trace with a header row naming the per-iteration monotone
/// quantities. Column set depends on the trace mode.
void write_trace(std::ostream& out, const ConvergenceTrace& trace);

}  // namespace sni
