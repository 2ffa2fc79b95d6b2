#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mdopt/problem.h"
#include "mdopt/restart.h"
#include "mdopt/solve.h"

namespace mdopt {

// %.17g round trip: the decimal string parses back to the identical double.
std::string real_to_string(double v);
double real_from_string(const std::string& s);

void write_trace_jsonl(const std::filesystem::path& path,
                       const std::vector<StepRecord>& trace);

struct SummaryRow {
  std::string algorithm;
  std::string problem;
  double eps = 0.0;
  long iterations = 0;
  long productive = 0;
  long nonproductive = 0;
  double f_out = 0.0;
  double g_out = 0.0;
  std::string stop_reason;
  double wall_ms = 0.0;
};

SummaryRow make_summary_row(const std::string& algorithm,
                            const Problem& problem, double eps,
                            const RunResult& result);
SummaryRow make_summary_row(const std::string& algorithm,
                            const Problem& problem, double eps,
                            const RestartReport& report);

// Rows are sorted by (problem, algorithm, eps) before writing; wall_ms is
// appended only when timings is set so default output is reproducible byte
// for byte.
void write_summary_csv(const std::filesystem::path& path,
                       std::vector<SummaryRow> rows, bool timings);

// Per-stage chain breakdown of a restarted run.
void write_restart_report(const std::filesystem::path& path,
                          const std::string& algorithm,
                          const std::string& problem,
                          const RestartReport& report);

// Problem fixture: name, dimensions, defining data, and the reference
// optimum, all reals as round-trip decimal strings.
void save_problem_fixture(const std::filesystem::path& path,
                          const Problem& problem);

// Rebuilds the named problem from its factory, checks the stored defining
// data against the rebuilt instance bit for bit, and attaches the stored
// reference optimum.
Problem load_problem_fixture(const std::filesystem::path& path);

}  // namespace mdopt
