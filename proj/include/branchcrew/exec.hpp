#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace branchcrew {

struct CommandResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string output;  // stdout and stderr interleaved

  bool ok() const { return !timed_out && exit_code == 0; }
};

// Runs argv[0] with the given arguments, working directory, and extra
// environment entries. Output is captured; on timeout the whole process
// group is killed and timed_out is set. Throws Errc::command_failure when
// the process cannot be started at all.
CommandResult run_command(
    const std::vector<std::string>& argv, const std::filesystem::path& cwd,
    const std::vector<std::pair<std::string, std::string>>& extra_env = {},
    std::optional<std::chrono::milliseconds> timeout = std::nullopt);

// Same, but through /bin/sh -c so the command may use shell syntax.
CommandResult run_shell(
    const std::string& command, const std::filesystem::path& cwd,
    const std::vector<std::pair<std::string, std::string>>& extra_env = {},
    std::optional<std::chrono::milliseconds> timeout = std::nullopt);

}  // namespace branchcrew
