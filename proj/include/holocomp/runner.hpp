#ifndef HOLOCOMP_RUNNER_HPP
#define HOLOCOMP_RUNNER_HPP

#include <string>
#include <vector>

#include "holocomp/config.hpp"

namespace holocomp {

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 asserted inequality violated, 2 config error,
                      // 3 capacity error
  int violations = 0;
  std::vector<std::string> messages;
  std::string csv_path;
  std::string manifest_path;
};

/// Executes one experiment: writes the CSV and a JSON manifest next to it.
/// The exit code is nonzero iff an asserted inequality was violated or the
/// run could not proceed.
RunResult run(const ExperimentConfig& config);

/// Re-executes the configuration embedded in a manifest. `out_override`
/// redirects the CSV so reproducibility can be checked by comparing files.
RunResult run_from_manifest(const std::string& manifest_path,
                            const std::string& out_override = "");

/// Largest absolute difference between numeric cells of two CSV files with
/// identical layout; non-numeric cells must match exactly (returns +inf
/// otherwise).
double csv_max_numeric_difference(const std::string& path_a, const std::string& path_b);

}  // namespace holocomp

#endif
