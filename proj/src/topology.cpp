#include "fastbench/topology.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

namespace fastbench {

namespace {
constexpr double kSelectivityTolerance = 1e-9;
}

int TopologySpec::task_index(const std::string& name) const {
  for (std::size_t i = 0; i < tasks.size(); ++i)
    if (tasks[i].name == name) return static_cast<int>(i);
  return -1;
}

const TaskSpec* TopologySpec::find_task(const std::string& name) const {
  int i = task_index(name);
  return i < 0 ? nullptr : &tasks[i];
}

std::uint64_t TopologySpec::digest() const {
  Fnv1a h;
  for (const auto& t : tasks) {
    h.update(t.name);
    h.update_double(t.service_latency_ms);
    h.update(to_string(t.resource_class));
    h.update(to_string(t.kind));
  }
  for (const auto& e : edges) {
    h.update(e.from);
    h.update(e.to);
    h.update(to_string(e.label));
    h.update_double(e.selectivity);
  }
  for (const auto& n : success_path) h.update(n);
  return h.digest();
}

std::vector<std::string> validate(const TopologySpec& topo) {
  std::vector<std::string> out;
  std::set<std::string> names;
  int sources = 0, sinks = 0;
  for (const auto& t : topo.tasks) {
    if (!names.insert(t.name).second) out.push_back("duplicate task name: " + t.name);
    if (t.service_latency_ms < 0.0)
      out.push_back("task " + t.name + ": negative service latency");
    if (t.kind == TaskKind::source) {
      ++sources;
      if (t.service_latency_ms != 0.0)
        out.push_back("task " + t.name + ": source must have latency 0");
    }
    if (t.kind == TaskKind::sink) ++sinks;
  }
  if (sources != 1) out.push_back("topology must have exactly one source, found " +
                                  std::to_string(sources));
  if (sinks < 1) out.push_back("topology must have at least one sink");

  // Edge references, selectivity ranges, per-task outgoing sums.
  std::map<std::string, double> out_sum;
  std::map<std::string, int> out_count;
  for (const auto& e : topo.edges) {
    if (topo.task_index(e.from) < 0)
      out.push_back("dangling edge: unknown task '" + e.from + "' in " + e.from + "->" + e.to);
    if (topo.task_index(e.to) < 0)
      out.push_back("dangling edge: unknown task '" + e.to + "' in " + e.from + "->" + e.to);
    if (e.selectivity < 0.0 || e.selectivity > 1.0)
      out.push_back("edge " + e.from + "->" + e.to + ": selectivity out of [0,1]");
    const TaskSpec* to_task = topo.find_task(e.to);
    if (to_task && to_task->kind == TaskKind::source)
      out.push_back("edge " + e.from + "->" + e.to + ": edge into source");
    out_sum[e.from] += e.selectivity;
    out_count[e.from] += 1;
  }
  for (const auto& t : topo.tasks) {
    if (t.kind == TaskKind::sink) {
      if (out_count.count(t.name))
        out.push_back("sink " + t.name + " has outgoing edges");
      continue;
    }
    if (!out_count.count(t.name)) {
      out.push_back("non-sink task " + t.name + " has no outgoing edges");
      continue;
    }
    if (std::abs(out_sum[t.name] - 1.0) > kSelectivityTolerance)
      out.push_back("task " + t.name + ": selectivity sum != 1 (got " +
                    std::to_string(out_sum[t.name]) + ")");
  }

  // DAG check via Kahn's algorithm over valid task references.
  std::map<std::string, int> indeg;
  for (const auto& t : topo.tasks) indeg[t.name] = 0;
  for (const auto& e : topo.edges)
    if (topo.task_index(e.from) >= 0 && topo.task_index(e.to) >= 0) indeg[e.to] += 1;
  std::queue<std::string> q;
  for (const auto& [n, d] : indeg)
    if (d == 0) q.push(n);
  std::size_t visited = 0;
  while (!q.empty()) {
    std::string n = q.front();
    q.pop();
    ++visited;
    for (const auto& e : topo.edges)
      if (e.from == n && indeg.count(e.to) && --indeg[e.to] == 0) q.push(e.to);
  }
  if (visited != topo.tasks.size()) out.push_back("topology contains a cycle");

  // Success path: a real source-to-sink path over P/default edges.
  if (topo.success_path.empty()) {
    out.push_back("success_path is empty");
  } else {
    const TaskSpec* first = topo.find_task(topo.success_path.front());
    const TaskSpec* last = topo.find_task(topo.success_path.back());
    if (!first || first->kind != TaskKind::source)
      out.push_back("success_path does not start at the source");
    if (!last || last->kind != TaskKind::sink)
      out.push_back("success_path does not end at a sink");
    for (std::size_t i = 0; i + 1 < topo.success_path.size(); ++i) {
      bool found = false;
      for (const auto& e : topo.edges) {
        if (e.from == topo.success_path[i] && e.to == topo.success_path[i + 1] &&
            e.label != EdgeLabel::F) {
          found = true;
          break;
        }
      }
      if (!found)
        out.push_back("success_path step " + topo.success_path[i] + "->" +
                      topo.success_path[i + 1] + " is not a P/default edge");
    }
  }
  return out;
}

void require_valid(const TopologySpec& topo) {
  auto v = validate(topo);
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid topology:";
  for (const auto& s : v) os << "\n  - " << s;
  throw ValidationError(os.str());
}

double success_path_latency(const TopologySpec& topo) {
  double sum = 0.0;
  for (const auto& name : topo.success_path) {
    const TaskSpec* t = topo.find_task(name);
    if (!t) throw ValidationError("success_path references unknown task " + name);
    sum += t->service_latency_ms;
  }
  return sum;
}

std::vector<int> topological_order(const TopologySpec& topo) {
  std::vector<int> indeg(topo.tasks.size(), 0);
  for (const auto& e : topo.edges) indeg[topo.task_index(e.to)] += 1;
  std::vector<int> order;
  std::queue<int> q;
  for (std::size_t i = 0; i < topo.tasks.size(); ++i)
    if (indeg[i] == 0) q.push(static_cast<int>(i));
  while (!q.empty()) {
    int n = q.front();
    q.pop();
    order.push_back(n);
    for (const auto& e : topo.edges) {
      if (topo.task_index(e.from) != n) continue;
      int to = topo.task_index(e.to);
      if (--indeg[to] == 0) q.push(to);
    }
  }
  return order;
}

std::map<std::string, double> reach_probabilities(const TopologySpec& topo) {
  std::vector<double> reach(topo.tasks.size(), 0.0);
  for (std::size_t i = 0; i < topo.tasks.size(); ++i)
    if (topo.tasks[i].kind == TaskKind::source) reach[i] = 1.0;
  for (int n : topological_order(topo)) {
    for (const auto& e : topo.edges) {
      if (topo.task_index(e.from) != n) continue;
      reach[topo.task_index(e.to)] += reach[n] * e.selectivity;
    }
  }
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < topo.tasks.size(); ++i) out[topo.tasks[i].name] = reach[i];
  return out;
}

std::map<std::string, double> terminal_probabilities(const TopologySpec& topo) {
  auto reach = reach_probabilities(topo);
  std::map<std::string, double> out;
  for (const auto& t : topo.tasks)
    if (t.kind == TaskKind::sink) out[t.name] = reach[t.name];
  return out;
}

std::string to_string(ResourceClass c) { return c == ResourceClass::cpu ? "cpu" : "idle"; }

std::string to_string(TaskKind k) {
  switch (k) {
    case TaskKind::source: return "source";
    case TaskKind::worker: return "worker";
    case TaskKind::sink: return "sink";
  }
  return "?";
}

std::string to_string(EdgeLabel l) {
  switch (l) {
    case EdgeLabel::P: return "P";
    case EdgeLabel::F: return "F";
    case EdgeLabel::def: return "default";
  }
  return "?";
}

}  // namespace fastbench
