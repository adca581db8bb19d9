#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cbf/config.hpp"

namespace cbf {

enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitValidation = 2,
  kExitNonConvergence = 3,
  kExitBlowUp = 4,
};

const std::vector<std::string>& subcommands();

struct RunRequest {
  std::string subcommand;
  RunConfig config;
  /// Directory against which relative field-file paths are resolved.
  std::string base_dir;
  std::filesystem::path out_dir = "out";
  unsigned workers = 1;
  std::uint64_t seed_offset = 0;
};

/// Runs one subcommand, writes its artifacts and manifest.json into out_dir and returns
/// the exit code. Module errors propagate as exceptions; cli_main maps them to codes.
int run(const RunRequest& request);

/// Rebuilds the request recorded in a manifest (its out_dir is left at the default).
RunRequest request_from_manifest(const std::filesystem::path& manifest);

/// Full command-line entry point: parses flags, sets up logging from CBF_LOG, and maps
/// exceptions to exit codes.
int cli_main(int argc, const char* const* argv);

}  // namespace cbf
