#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "kwlab/estimate_checks.hpp"

namespace kwlab::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalError = 3, kResourceLimit = 4 };

struct ExperimentConfig {
  std::string command;
  std::map<std::string, std::string> params;  // every allowed key, defaults filled in
  std::uint64_t seed = 1;
  std::string out_dir = "runs";
  unsigned threads = 1;
};

const std::vector<std::string>& commands();

/// Allowed keys of a command with their default values.
const std::map<std::string, std::string>& defaults(const std::string& command);

/// Flat key=value text: several pairs per line allowed, '#' starts a comment.
/// `seed` and `command` are recognised keys; anything else must belong to the command.
ExperimentConfig parse_config(std::istream& in, const std::string& command);
ExperimentConfig parse_config_text(const std::string& text, const std::string& command);

/// Canonical sorted key=value lines, including command and seed. Parsing it back yields the same config.
std::string config_echo(const ExperimentConfig& cfg);

/// 16 hex digits of FNV-1a over the config echo.
std::string run_id(const ExperimentConfig& cfg);

/// Runs the command into `dir`, which must exist; returns the report JSON text. Throws kwlab errors.
std::string execute(const ExperimentConfig& cfg, const std::filesystem::path& dir);

struct RunResult {
  int exit_code = kOk;
  std::filesystem::path run_dir;
  std::string message;
};

/// Stages every artifact in a scratch directory and moves it to <out>/<command>-<run id> on success.
/// Never throws; on failure nothing is left behind.
RunResult run(const ExperimentConfig& cfg);

/// Standalone JSON for one ratio report; an empty report gives zero samples.
std::string ratio_report_json(const RatioReport& r);

int exit_code_for(const std::exception& e);

}  // namespace kwlab::cli
