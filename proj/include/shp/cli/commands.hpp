#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "shp/cli/output.hpp"

namespace shp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // verification failure or rejected integration
inline constexpr int kExitConfig = 2;   // bad flags, config file or parameters

/// Command-line flags shared by every subcommand. Flags override the
/// matching config keys.
struct RunConfig {
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<std::string> out;
    std::optional<Format> format;  // per-command default when unset
};

struct CommandOutput {
    std::string primary;                // CSV or JSON document
    std::optional<std::string> summary; // JSON summary accompanying a CSV scan
    int exit_code = kExitOk;
    std::string message;                // diagnostic for stderr
};

const std::vector<std::string>& command_names();

/// Runs a command and returns its outputs without touching the filesystem
/// (except for reading the config). Throws ConfigError and library errors.
CommandOutput run_command(const std::string& name, const RunConfig& run);

/// run_command plus error mapping and output placement: the primary output
/// goes to --out or `out`; a summary goes next to --out with the extension
/// replaced by ".summary.json". Returns the exit code.
int execute(const std::string& name, const RunConfig& run, std::ostream& out, std::ostream& err);

}  // namespace shp::cli
