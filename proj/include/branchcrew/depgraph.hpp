#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace branchcrew::depgraph {

enum class Complexity { simple = 1, medium = 2, complex = 3 };

Complexity complexity_from_string(std::string_view s);
const char* to_string(Complexity c);
inline int weight(Complexity c) { return static_cast<int>(c); }

enum class UnitStatus { pending, assigned, completed, integrated };
const char* to_string(UnitStatus s);

// One schedulable unit of work: a file, or a disjoint slice of a file's
// functions when the file was split.
struct TaskUnit {
  std::string unit_id;
  std::string file_path;
  std::vector<std::string> functions;  // empty = whole file
  Complexity complexity = Complexity::simple;
  UnitStatus status = UnitStatus::pending;
  // Number of test cases referencing the unit's file; 0 when no test
  // mapping is available.
  int coverage_weight = 0;
};

struct MajorTaskGroup {
  std::string group_id;
  std::vector<std::string> unit_ids;
  std::optional<std::string> assigned_engineer;
};

// Directed dependency graph over task units. An edge (u, v) means v cannot
// start until u has been integrated into main. Single-writer: only the
// coordination loop mutates a graph; copies are cheap value snapshots.
class DependencyGraph {
 public:
  DependencyGraph() = default;

  // Deduplicates edges; rejects duplicate unit ids, unknown edge endpoints,
  // and overlapping function sets within one file.
  static DependencyGraph build(
      std::vector<TaskUnit> units,
      const std::vector<std::pair<std::string, std::string>>& deps);

  const std::map<std::string, TaskUnit>& units() const { return units_; }
  const TaskUnit& unit(const std::string& id) const;
  const std::set<std::pair<std::string, std::string>>& edges() const {
    return edges_;
  }
  const std::set<std::string>& completed() const { return completed_; }
  int round() const { return round_; }
  void advance_round();

  // Units whose predecessors are all integrated and whose status is still
  // pending, ordered by priority score (coverage desc, upstream depth asc,
  // complexity asc, unit_id).
  std::vector<std::string> ready_units() const;

  bool is_ready(const std::string& id) const;

  // pending -> assigned
  void mark_assigned(const std::string& id);
  // assigned -> completed (verified commit exists, not yet merged)
  void mark_completed(const std::string& id);
  // completed -> assigned (failed verification, rework)
  void reset_to_assigned(const std::string& id);
  // assigned -> pending (assignment abandoned, unit returns to the pool)
  void release(const std::string& id);
  // completed -> integrated; unit joins the completed set
  void complete_unit(const std::string& id);

  // unit_id -> scc index; units in one cycle share an index, and the
  // condensed graph is acyclic.
  std::map<std::string, int> condense_sccs() const;

  // Between 1 and n groups balancing summed complexity weight, with every
  // strongly connected component kept whole. Deterministic.
  std::vector<MajorTaskGroup> partition_major_groups(int n) const;

  // Highest-priority ready unit within the group, if any.
  std::optional<std::string> next_task(const MajorTaskGroup& group) const;

  // Longest path (in SCC hops) from any source to the unit's component in
  // the condensed DAG.
  int upstream_depth(const std::string& id) const;

  // Canonical JSON: {"units":[...],"edges":[[from,to]],"completed":[...],
  // "round":t}, compact, newline-terminated.
  std::string to_json() const;
  static DependencyGraph from_json(std::string_view raw);

  bool operator==(const DependencyGraph&) const = default;

 private:
  TaskUnit& unit_mut(const std::string& id);
  std::vector<std::string> sort_by_priority(std::vector<std::string> ids) const;

  std::map<std::string, TaskUnit> units_;
  std::set<std::pair<std::string, std::string>> edges_;
  std::set<std::string> completed_;
  int round_ = 0;
};

}  // namespace branchcrew::depgraph
