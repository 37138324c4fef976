#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include <nlohmann/json.hpp>

namespace infostab::cli {

inline constexpr const char* config_schema = "infostab.run/1";
inline constexpr const char* report_schema = "infostab.report/1";

enum ExitCode : int { exit_ok = 0, exit_violation = 1, exit_config = 2 };

struct RunOptions {
  std::filesystem::path out_dir = ".";
  /// Overrides the config's "jobs" field when set.
  std::optional<int> jobs;
  bool dump_defects = false;
};

/// Runs one job and writes report.json (plus summary.csv / defects.csv where
/// the job produces them) under `out_dir`. Diagnostics go to `err`.
int run(const nlohmann::json& config, const RunOptions& options, std::ostream& err);

/// Parses the config file, then calls `run`. Parse failures exit with 2.
int run_file(const std::filesystem::path& config_path, const RunOptions& options,
             std::ostream& err);

}  // namespace infostab::cli
