#pragma once

// Command-line front end: flags (and an optional JSON config file, which
// flags override) -> validated RunConfig -> pipeline -> JSON or CSV artifact.
//
// Exit codes: 0 ok, 2 validation, 3 numeric or I/O failure, 4 failed verification.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigmak_cli/emit.hpp"

namespace sigmak::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kNumeric = 3, kVerification = 4 };

/// Bad flags, bad config values, unreadable input contents.
class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::optional<int> n;
  std::optional<int> k;
  std::optional<double> R;
  std::optional<std::vector<double>> kappas;
  std::optional<std::vector<double>> lambda;
  std::optional<double> J;
  std::optional<double> delta;
  std::optional<double> C;
  std::optional<int> grid;
  std::optional<int> order;
  std::optional<std::string> input;
  std::optional<std::string> out;
  std::string format = "json";
};

enum class LogLevel { quiet, info, debug };

/// SIGMAK_LOG value; unset or unrecognized means info.
LogLevel log_level_from_env();

/// Parses arguments (without the program name). Applies the config file named
/// by --config underneath the flags. Throws UsageError.
RunConfig parse_arguments(const std::vector<std::string>& args);

/// Fills fields of `cfg` that are still unset from a JSON object.
void apply_config_file(RunConfig& cfg, const nlohmann::json& file);

/// Checks every field against the preconditions of the chosen command.
void validate(RunConfig& cfg);

struct RunResult {
  std::string artifact;  // JSON or CSV text
  Json summary;          // top-level facts for the human-readable table
  bool verified = true;
};

/// Runs a validated config. Diagnostics go to `log` subject to `level`.
RunResult execute(const RunConfig& cfg, std::ostream& log, LogLevel level);

/// Full front end: parse, validate, execute, emit. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        LogLevel level = log_level_from_env());

}  // namespace sigmak::cli
