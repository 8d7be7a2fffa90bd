#include "branchcrew/depgraph.hpp"

#include <algorithm>
#include <tuple>

#include "branchcrew/jsonio.hpp"

namespace branchcrew::depgraph {

Complexity complexity_from_string(std::string_view s) {
  if (s == "simple") return Complexity::simple;
  if (s == "medium") return Complexity::medium;
  if (s == "complex") return Complexity::complex;
  raise(Errc::schema_violation,
        "complexity: expected simple|medium|complex, got '" + std::string(s) +
            "'");
}

const char* to_string(Complexity c) {
  switch (c) {
    case Complexity::simple: return "simple";
    case Complexity::medium: return "medium";
    case Complexity::complex: return "complex";
  }
  return "simple";
}

const char* to_string(UnitStatus s) {
  switch (s) {
    case UnitStatus::pending: return "pending";
    case UnitStatus::assigned: return "assigned";
    case UnitStatus::completed: return "completed";
    case UnitStatus::integrated: return "integrated";
  }
  return "pending";
}

DependencyGraph DependencyGraph::build(
    std::vector<TaskUnit> units,
    const std::vector<std::pair<std::string, std::string>>& deps) {
  DependencyGraph g;
  std::map<std::string, std::set<std::string>> functions_per_file;
  for (auto& u : units) {
    if (g.units_.contains(u.unit_id))
      raise(Errc::duplicate_unit, u.unit_id);
    auto& seen = functions_per_file[u.file_path];
    for (const auto& fn : u.functions) {
      if (!seen.insert(fn).second)
        raise(Errc::overlapping_functions,
              u.file_path + ": function '" + fn + "' appears in two units");
    }
    g.units_.emplace(u.unit_id, std::move(u));
  }
  for (const auto& [from, to] : deps) {
    if (!g.units_.contains(from)) raise(Errc::unknown_unit, from);
    if (!g.units_.contains(to)) raise(Errc::unknown_unit, to);
    g.edges_.emplace(from, to);  // set deduplicates
  }
  return g;
}

const TaskUnit& DependencyGraph::unit(const std::string& id) const {
  auto it = units_.find(id);
  if (it == units_.end()) raise(Errc::unknown_unit, id);
  return it->second;
}

TaskUnit& DependencyGraph::unit_mut(const std::string& id) {
  auto it = units_.find(id);
  if (it == units_.end()) raise(Errc::unknown_unit, id);
  return it->second;
}

void DependencyGraph::advance_round() { ++round_; }

bool DependencyGraph::is_ready(const std::string& id) const {
  const TaskUnit& u = unit(id);
  if (u.status != UnitStatus::pending) return false;
  for (const auto& [from, to] : edges_) {
    if (to == id && !completed_.contains(from)) return false;
  }
  return true;
}

std::vector<std::string> DependencyGraph::sort_by_priority(
    std::vector<std::string> ids) const {
  // Score tuple: coverage desc, upstream depth asc, complexity asc, id asc.
  std::map<std::string, int> depth;
  for (const auto& id : ids) depth[id] = upstream_depth(id);
  std::sort(ids.begin(), ids.end(),
            [&](const std::string& a, const std::string& b) {
              const TaskUnit& ua = units_.at(a);
              const TaskUnit& ub = units_.at(b);
              return std::tuple(-ua.coverage_weight, depth.at(a),
                                weight(ua.complexity), a) <
                     std::tuple(-ub.coverage_weight, depth.at(b),
                                weight(ub.complexity), b);
            });
  return ids;
}

std::vector<std::string> DependencyGraph::ready_units() const {
  std::vector<std::string> out;
  for (const auto& [id, u] : units_) {
    if (is_ready(id)) out.push_back(id);
  }
  return sort_by_priority(std::move(out));
}

void DependencyGraph::mark_assigned(const std::string& id) {
  TaskUnit& u = unit_mut(id);
  if (u.status != UnitStatus::pending)
    raise(Errc::invalid_transition,
          id + ": " + to_string(u.status) + " -> assigned");
  u.status = UnitStatus::assigned;
}

void DependencyGraph::mark_completed(const std::string& id) {
  TaskUnit& u = unit_mut(id);
  if (u.status != UnitStatus::assigned)
    raise(Errc::invalid_transition,
          id + ": " + to_string(u.status) + " -> completed");
  u.status = UnitStatus::completed;
}

void DependencyGraph::reset_to_assigned(const std::string& id) {
  TaskUnit& u = unit_mut(id);
  if (u.status != UnitStatus::completed)
    raise(Errc::invalid_transition,
          id + ": " + to_string(u.status) + " -> assigned (rework)");
  u.status = UnitStatus::assigned;
}

void DependencyGraph::release(const std::string& id) {
  TaskUnit& u = unit_mut(id);
  if (u.status != UnitStatus::assigned && u.status != UnitStatus::completed)
    raise(Errc::invalid_transition,
          id + ": " + to_string(u.status) + " -> pending (release)");
  u.status = UnitStatus::pending;
}

void DependencyGraph::complete_unit(const std::string& id) {
  TaskUnit& u = unit_mut(id);
  if (u.status != UnitStatus::completed)
    raise(Errc::invalid_transition,
          id + ": " + to_string(u.status) + " -> integrated");
  u.status = UnitStatus::integrated;
  completed_.insert(id);
}

std::map<std::string, int> DependencyGraph::condense_sccs() const {
  // Iterative Tarjan over the sorted unit map.
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& [id, u] : units_) adj[id];
  for (const auto& [from, to] : edges_) adj[from].push_back(to);

  std::map<std::string, int> index, lowlink;
  std::map<std::string, bool> on_stack;
  std::vector<std::string> stack;
  std::vector<std::vector<std::string>> components;
  int next_index = 0;

  struct Frame {
    std::string node;
    size_t child = 0;
  };

  for (const auto& [root, _] : adj) {
    if (index.contains(root)) continue;
    std::vector<Frame> frames{{root}};
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& children = adj.at(f.node);
      if (f.child < children.size()) {
        const std::string& w = children[f.child++];
        if (!index.contains(w)) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w});
        } else if (on_stack[w]) {
          lowlink[f.node] = std::min(lowlink[f.node], index[w]);
        }
      } else {
        if (lowlink[f.node] == index[f.node]) {
          std::vector<std::string> comp;
          while (true) {
            std::string w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.push_back(w);
            if (w == f.node) break;
          }
          components.push_back(std::move(comp));
        }
        std::string done = f.node;
        frames.pop_back();
        if (!frames.empty())
          lowlink[frames.back().node] =
              std::min(lowlink[frames.back().node], lowlink[done]);
      }
    }
  }

  // Renumber components by smallest member id so ids are stable across
  // traversal orders.
  for (auto& comp : components) std::sort(comp.begin(), comp.end());
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  std::map<std::string, int> out;
  for (size_t i = 0; i < components.size(); ++i)
    for (const auto& id : components[i]) out[id] = static_cast<int>(i);
  return out;
}

int DependencyGraph::upstream_depth(const std::string& id) const {
  auto scc = condense_sccs();
  int n = 0;
  for (const auto& [_, c] : scc) n = std::max(n, c + 1);

  // Condensed adjacency + longest-path DP in topological order.
  std::vector<std::set<int>> preds(n);
  for (const auto& [from, to] : edges_) {
    int cf = scc.at(from), ct = scc.at(to);
    if (cf != ct) preds[ct].insert(cf);
  }
  std::vector<int> depth(n, -1);
  // The condensed graph is acyclic, so a fixed-point sweep terminates.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int c = 0; c < n; ++c) {
      int d = 0;
      bool all_known = true;
      for (int p : preds[c]) {
        if (depth[p] < 0) {
          all_known = false;
          break;
        }
        d = std::max(d, depth[p] + 1);
      }
      if (all_known && depth[c] != d) {
        depth[c] = d;
        changed = true;
      }
    }
  }
  return depth[scc.at(unit(id).unit_id)];
}

std::vector<MajorTaskGroup> DependencyGraph::partition_major_groups(
    int n) const {
  if (n < 1) n = 1;
  auto scc = condense_sccs();
  std::map<int, std::vector<std::string>> members;
  for (const auto& [id, c] : scc) members[c].push_back(id);

  struct Comp {
    int total_weight = 0;
    std::vector<std::string> ids;
  };
  std::vector<Comp> comps;
  for (auto& [c, ids] : members) {
    Comp comp;
    comp.ids = ids;
    for (const auto& id : ids) comp.total_weight += weight(units_.at(id).complexity);
    comps.push_back(std::move(comp));
  }
  // Heaviest component first; ties by smallest member id.
  std::sort(comps.begin(), comps.end(), [](const Comp& a, const Comp& b) {
    return std::tuple(-a.total_weight, a.ids.front()) <
           std::tuple(-b.total_weight, b.ids.front());
  });

  size_t k = std::min<size_t>(static_cast<size_t>(n), comps.size());
  if (k == 0) k = 1;
  std::vector<MajorTaskGroup> groups(k);
  std::vector<int> load(k, 0);
  for (const auto& comp : comps) {
    size_t target = 0;
    for (size_t i = 1; i < k; ++i)
      if (load[i] < load[target]) target = i;
    for (const auto& id : comp.ids) groups[target].unit_ids.push_back(id);
    load[target] += comp.total_weight;
  }
  std::vector<MajorTaskGroup> out;
  for (size_t i = 0; i < k; ++i) {
    if (groups[i].unit_ids.empty()) continue;
    MajorTaskGroup g;
    g.group_id = "g" + std::to_string(out.size());
    g.unit_ids = sort_by_priority(std::move(groups[i].unit_ids));
    out.push_back(std::move(g));
  }
  return out;
}

std::optional<std::string> DependencyGraph::next_task(
    const MajorTaskGroup& group) const {
  std::vector<std::string> ready;
  for (const auto& id : group.unit_ids)
    if (is_ready(id)) ready.push_back(id);
  if (ready.empty()) return std::nullopt;
  return sort_by_priority(std::move(ready)).front();
}

std::string DependencyGraph::to_json() const {
  ojson doc;
  doc["units"] = ojson::array();
  for (const auto& [id, u] : units_) {
    ojson ju;
    ju["unit_id"] = u.unit_id;
    ju["file_path"] = u.file_path;
    ju["functions"] = u.functions;
    ju["complexity"] = to_string(u.complexity);
    doc["units"].push_back(std::move(ju));
  }
  doc["edges"] = ojson::array();
  for (const auto& [from, to] : edges_)
    doc["edges"].push_back(ojson::array({from, to}));
  doc["completed"] = ojson::array();
  for (const auto& id : completed_) doc["completed"].push_back(id);
  doc["round"] = round_;
  return canonical_dump(doc);
}

DependencyGraph DependencyGraph::from_json(std::string_view raw) {
  ojson doc = parse_json(raw, "dependency graph");
  check_fields(doc, "graph", {"units", "edges", "completed", "round"});
  std::vector<TaskUnit> units;
  for (const auto& ju : doc["units"]) {
    check_fields(ju, "graph.units[]",
                 {"unit_id", "file_path", "functions", "complexity"});
    TaskUnit u;
    u.unit_id = ju["unit_id"].get<std::string>();
    u.file_path = ju["file_path"].get<std::string>();
    for (const auto& f : ju["functions"]) u.functions.push_back(f.get<std::string>());
    u.complexity = complexity_from_string(ju["complexity"].get<std::string>());
    units.push_back(std::move(u));
  }
  std::vector<std::pair<std::string, std::string>> deps;
  for (const auto& je : doc["edges"]) {
    if (!je.is_array() || je.size() != 2)
      raise(Errc::schema_violation, "graph.edges[]: expected [from,to]");
    deps.emplace_back(je[0].get<std::string>(), je[1].get<std::string>());
  }
  DependencyGraph g = build(std::move(units), deps);
  for (const auto& jc : doc["completed"]) {
    std::string id = jc.get<std::string>();
    // Completed-set members have been through the full lifecycle.
    g.mark_assigned(id);
    g.mark_completed(id);
    g.complete_unit(id);
  }
  g.round_ = doc["round"].get<int>();
  return g;
}

}  // namespace branchcrew::depgraph
