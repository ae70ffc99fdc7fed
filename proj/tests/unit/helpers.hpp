#pragma once

#include <string>
#include <vector>

#include "fastbench/topology.hpp"

namespace fastbench::testutil {

/// source -> n workers -> sink, all selectivity 1, named s, w1..wn, k.
inline TopologySpec linear_topology(const std::vector<double>& worker_latencies_ms,
                                    double sink_latency_ms = 0.0) {
  TopologySpec t;
  t.tasks.push_back({"s", 0.0, ResourceClass::cpu, TaskKind::source});
  std::string prev = "s";
  t.success_path.push_back("s");
  for (std::size_t i = 0; i < worker_latencies_ms.size(); ++i) {
    std::string name = "w" + std::to_string(i + 1);
    t.tasks.push_back({name, worker_latencies_ms[i], ResourceClass::cpu, TaskKind::worker});
    t.edges.push_back({prev, name, EdgeLabel::def, 1.0});
    t.success_path.push_back(name);
    prev = name;
  }
  t.tasks.push_back({"k", sink_latency_ms, ResourceClass::cpu, TaskKind::sink});
  t.edges.push_back({prev, "k", EdgeLabel::def, 1.0});
  t.success_path.push_back("k");
  return t;
}

/// source -> a -> {pass: sink_ok (p), fail: sink_bad (1-p)}.
inline TopologySpec fork_topology(double p, double a_latency_ms = 1.0) {
  TopologySpec t;
  t.tasks.push_back({"s", 0.0, ResourceClass::cpu, TaskKind::source});
  t.tasks.push_back({"a", a_latency_ms, ResourceClass::cpu, TaskKind::worker});
  t.tasks.push_back({"ok", 0.0, ResourceClass::cpu, TaskKind::sink});
  t.tasks.push_back({"bad", 0.0, ResourceClass::cpu, TaskKind::sink});
  t.edges.push_back({"s", "a", EdgeLabel::def, 1.0});
  t.edges.push_back({"a", "ok", EdgeLabel::P, p});
  t.edges.push_back({"a", "bad", EdgeLabel::F, 1.0 - p});
  t.success_path = {"s", "a", "ok"};
  return t;
}

}  // namespace fastbench::testutil
