#include "branchcrew/errors.hpp"

namespace branchcrew {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::unknown_unit: return "UnknownUnit";
    case Errc::duplicate_unit: return "DuplicateUnit";
    case Errc::invalid_transition: return "InvalidTransition";
    case Errc::io_failure: return "IoFailure";
    case Errc::malformed_json: return "MalformedJson";
    case Errc::schema_violation: return "SchemaViolation";
    case Errc::overlapping_functions: return "OverlappingFunctions";
    case Errc::restricted_file_assignment: return "RestrictedFileAssignment";
    case Errc::unknown_engineer: return "UnknownEngineer";
    case Errc::dirty_tree: return "DirtyTree";
    case Errc::worktree_exists: return "WorktreeExists";
    case Errc::vcs_failure: return "VcsFailure";
    case Errc::restricted_file_changed: return "RestrictedFileChanged";
    case Errc::empty_commit: return "EmptyCommit";
    case Errc::timeout: return "Timeout";
    case Errc::command_failure: return "CommandFailure";
    case Errc::budget_exhausted: return "BudgetExhausted";
    case Errc::backend_failure: return "BackendFailure";
    case Errc::config_error: return "ConfigError";
    case Errc::scenario_error: return "ScenarioError";
    case Errc::corrupt_log: return "CorruptLog";
    case Errc::missing_score: return "MissingScore";
    case Errc::fatal_error: return "FatalError";
  }
  return "UnknownError";
}

}  // namespace branchcrew
