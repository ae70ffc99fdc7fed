#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fastbench/common.hpp"

namespace fastbench {

enum class ResourceClass { cpu, idle };
enum class TaskKind { source, worker, sink };

struct TaskSpec {
  std::string name;
  double service_latency_ms = 0.0;
  ResourceClass resource_class = ResourceClass::cpu;
  TaskKind kind = TaskKind::worker;
};

/// Edge label semantics follow the dataflow figures: "P" is taken by events
/// that pass the check at a task, "F" by events that fail it.
enum class EdgeLabel { P, F, def };

struct EdgeSpec {
  std::string from;
  std::string to;
  EdgeLabel label = EdgeLabel::def;
  double selectivity = 1.0;
};

/// Directed acyclic task graph with routing selectivities. Each event takes
/// exactly one outgoing edge per task (routing, not replication).
struct TopologySpec {
  std::vector<TaskSpec> tasks;
  std::vector<EdgeSpec> edges;
  std::vector<std::string> success_path;

  int task_index(const std::string& name) const;  // -1 when absent
  const TaskSpec* find_task(const std::string& name) const;
  std::uint64_t digest() const;
};

/// Returns every invariant violation, identified by task/edge. Empty = valid.
std::vector<std::string> validate(const TopologySpec& topo);

/// Throws ValidationError listing all violations when the topology is invalid.
void require_valid(const TopologySpec& topo);

/// Sum of service latencies over the designated success path.
double success_path_latency(const TopologySpec& topo);

/// Probability that an event injected at the source terminates at each sink,
/// by forward propagation of edge selectivities. Sums to 1.
std::map<std::string, double> terminal_probabilities(const TopologySpec& topo);

/// Probability that an event reaches each task (source = 1). Uses the same
/// propagation as terminal_probabilities; drives selectivity-aware planning.
std::map<std::string, double> reach_probabilities(const TopologySpec& topo);

/// Tasks in a topological order starting at the source.
std::vector<int> topological_order(const TopologySpec& topo);

std::string to_string(ResourceClass c);
std::string to_string(TaskKind k);
std::string to_string(EdgeLabel l);

}  // namespace fastbench
