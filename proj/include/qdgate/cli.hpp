#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "qdgate/config.hpp"

namespace qdgate {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

/// Executes one configured command. Data goes to cfg.output_path() when set,
/// otherwise to `out`; summaries go to `out` and diagnostics to `err`.
/// Returns 0, 2 (configuration error) or 3 (numerical precondition error).
int run(const RunConfig& cfg, int threads, std::ostream& out, std::ostream& err);

struct CliOptions {
  std::string config_path;
  std::optional<std::string> output;
  std::optional<std::string> command;
  int threads = 1;
};

/// Loads the config file, applies flag overrides and calls run().
int run_cli(const CliOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace qdgate
