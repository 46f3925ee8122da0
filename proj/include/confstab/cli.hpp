#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace confstab {

enum ExitCode : int {
  kExitOk = 0,
  kExitAssertion = 1,
  kExitInvalidConfig = 2,
  kExitBudget = 3,
};

struct RunConfig {
  std::string command;
  std::string graph_path;
  std::string family_path;
  int n = 2;
  int q = -1;  // -1: every degree (model / homology / oracle-compare)
  std::vector<int> sinks;
  bool oracle = false;
  int k0 = -1;  // window for rep-stability and poly-fit
  int k1 = -1;
  int degree = -1;
  std::vector<int> sizes;
  int max_degree = 3;
  int holdout = 1;
  int max_k = 8;
  std::string cache_dir;
  int jobs = 1;
  std::size_t max_cells = 5'000'000;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 20240101;
  double audit_rate = 0.0;  // share of cache hits recomputed and compared
};

struct RunResult {
  int exit_code = kExitOk;
  nlohmann::json report;
  std::string csv;
  std::vector<std::string> warnings;
  bool cache_hit = false;
};

/// Throws InvalidArgument for out-of-range parameters or unreadable input files.
void validate(const RunConfig& config);

/// Validates, dispatches, consults the cache. Never throws; failures map to exit codes
/// with an "error" report.
RunResult run(const RunConfig& config);

/// CSV table for a report produced by `run`.
std::string report_csv(const nlohmann::json& report);

/// Parses argv, runs, writes the report. Returns the exit code.
int cli_main(int argc, char** argv);

}  // namespace confstab
