#include <sni/report.hpp>

#include <cstdio>

namespace sni {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_report(const RunReport& report) {
  std::string out;
  out += "method: " + report.method + "\n";
  for (const auto& [key, value] : report.config) {
    out += key + ": " + value + "\n";
  }
  out += "iterations: " + std::to_string(report.iterations) + "\n";
  out += std::string("converged: ") + (report.converged ? "true" : "false") + "\n";
  for (const auto& [key, value] : report.metrics) {
    out += key + ": " + value + "\n";
  }
  if (!report.trace_file.empty()) {
    out += "trace_file: " + report.trace_file + "\n";
  }
  return out;
}

void write_trace(std::ostream& out, const ConvergenceTrace& trace) {
  const bool full = trace.mode == ObservationMode::kFullObservation;
  if (full) {
    out << "iteration\terror\tsubspace_error_u\tsubspace_error_v\tsigma_min\n";
  } else {
    out << "iteration\tobjective_f1\tsigma_min\n";
  }
  for (const TraceRecord& rec : trace.records) {
    out << rec.iteration << '\t' << format_double(rec.error);
    if (full) {
      out << '\t' << format_double(rec.subspace_error_u.value_or(0.0)) << '\t'
          << format_double(rec.subspace_error_v.value_or(0.0));
    }
    out << '\t' << format_double(rec.sigma_min) << '\n';
  }
}

}  // namespace sni
