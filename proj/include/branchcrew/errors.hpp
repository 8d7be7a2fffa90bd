#pragma once

#include <stdexcept>
#include <string>

namespace branchcrew {

// Failure taxonomy shared by every module. Each value maps to one
// documented error condition; the string form appears in logs and
// test expectations.
enum class Errc {
  unknown_unit,
  duplicate_unit,
  invalid_transition,
  io_failure,
  malformed_json,
  schema_violation,
  overlapping_functions,
  restricted_file_assignment,
  unknown_engineer,
  dirty_tree,
  worktree_exists,
  vcs_failure,
  restricted_file_changed,
  empty_commit,
  timeout,
  command_failure,
  budget_exhausted,
  backend_failure,
  config_error,
  scenario_error,
  corrupt_log,
  missing_score,
  fatal_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code),
        detail_(std::move(detail)) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

[[noreturn]] inline void raise(Errc code, std::string detail) {
  throw Error(code, std::move(detail));
}

}  // namespace branchcrew
