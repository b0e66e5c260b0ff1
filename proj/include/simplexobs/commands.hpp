#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "simplexobs/linalg.hpp"

namespace simplexobs {

/// Exit status contract shared by every command.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

/// A self-describing run report: {command, n, parameters, results, timings,
/// version}. Results are keyed by the module that produced them.
struct CommandResult {
  nlohmann::json report;
  int exit_code = kExitOk;
};

std::string toolkit_version();

/// Builds the system for n and writes M.mtx, delta.json, D.json,
/// indices.json and report.json into `out_dir`.
CommandResult cmd_build(int n, const std::filesystem::path& out_dir);

CommandResult cmd_solve(int n, Field field);

struct VerifyPathsOptions {
  int n = 4;
  int faces = 50;
  int samples = 1024;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  /// Number of independent random upper-winding vectors.
  int trials = 1;
  /// Use the base construction's upper winding numbers instead of random ones.
  bool base_targets = false;
};

/// Builds edge paths realizing random upper winding numbers, composes face
/// loops on random faces and compares every block winding with the matching
/// entry of M w - D.
CommandResult cmd_verify_paths(const VerifyPathsOptions& options);

CommandResult cmd_counterexample(int grid_depth);

/// Human-readable rendering of a report for --format text.
std::string format_text(const nlohmann::json& report);

}  // namespace simplexobs
