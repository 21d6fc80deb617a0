#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace picklab {

/// Command-line overrides applied on top of the problem file payload.
struct RunOverrides {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  bool csv = false;
  std::optional<int> grid;
  std::optional<int> restarts;
  std::optional<int> budget;
  std::optional<double> threshold;
  std::optional<int> max_n;
};

/// Exit codes: 0 computed (regardless of verdict), 2 invalid input,
/// 3 numerical failure.
struct RunResult {
  int exit_code = 0;
  std::string output;  // JSON report, or CSV table under --csv
  std::string error;   // diagnostic naming the offending field on failure
};

RunResult run_problem_text(const std::string& text, const RunOverrides& overrides);
RunResult run_problem_file(const std::string& path, const RunOverrides& overrides);

}  // namespace picklab
