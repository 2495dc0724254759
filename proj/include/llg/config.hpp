#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "llg/experiment.hpp"

namespace llg {

enum class Command { Run, Converge, Compare, Reproduce };

/// Everything one invocation of the command-line tool needs.
struct Config {
  Command command = Command::Run;
  std::string target;  // reproduce target
  ExperimentSpec spec;
  std::vector<double> dts;         // converge
  std::vector<SchemeId> schemes;   // compare
  std::vector<double> times;       // compare report times
  double ref_dt = 1e-6;            // RK4 reference step
  std::filesystem::path cache_dir; // reference cache
  bool nx_set = false;             // grid size given explicitly

  /// Command-specific checks; throws ConfigError.
  void validate() const;
};

/// Parsed `key = value` lines; '#' starts a comment. Throws ConfigError with
/// the line number on malformed lines.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Valid keys in config files (CLI flags are the same names with '-' for '_').
const std::vector<std::string>& config_keys();

/// Applies one key; throws ConfigError on unknown keys or bad values.
void apply_setting(Config& cfg, const std::string& key, const std::string& value);

/// Builds a Config from defaults, then the --config file, then flags.
/// Returns false when help was requested (the text is written to `help`).
bool parse_cli(int argc, const char* const* argv, Config& cfg, std::string& help);

std::vector<double> parse_list(const std::string& key, const std::string& value);

}  // namespace llg
