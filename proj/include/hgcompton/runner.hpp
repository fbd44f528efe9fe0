#pragma once

#include <optional>
#include <string>

#include "hgcompton/run_config.hpp"

namespace hgcompton {

// Command-line overrides applied on top of the parsed config.
struct RunOptions {
  std::optional<RunMode> mode;
  std::optional<std::string> out;
  std::optional<OutputUnits> units;
  int threads = 1;
};

// Loads, validates, applies overrides; throws ParseError/ValidationError.
RunConfig load_config(const std::string& path, const RunOptions& opt);

// Dispatches the configured scan and writes the output file(s).
// Returns 0 on success, 3 on numerical failure. Config errors never reach
// here; the caller maps them to exit code 2.
int run(const RunConfig& cfg, const RunOptions& opt);

}  // namespace hgcompton
