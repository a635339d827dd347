#pragma once

#include "fockidx/io/config.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace fockidx::io {

enum class Command { kernel, semigroup, gram, inner, unitalg, membership, witness, approx, index, selftest };

std::optional<Command> parse_command(std::string_view name);
std::string to_string(Command command);
const std::vector<std::string>& command_names();

struct CommandOutcome {
    bool passed = true;
    std::vector<std::string> files;  // written, relative to the output directory
    std::vector<std::string> lines;  // human-readable summary
};

/// Runs one command and writes its reports into out_dir.
CommandOutcome run(Command command, const ExperimentConfig& config,
                   const std::filesystem::path& out_dir);

inline constexpr int kExitOk = 0;
inline constexpr int kExitToleranceFailure = 1;
inline constexpr int kExitConfigError = 2;

/// Loads the config, runs the command and maps the outcome to an exit status.
int run_cli(Command command, const std::filesystem::path& config_path,
            const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

}  // namespace fockidx::io
