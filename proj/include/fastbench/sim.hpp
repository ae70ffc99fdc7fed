#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fastbench/metrics.hpp"
#include "fastbench/parallelism.hpp"
#include "fastbench/router.hpp"
#include "fastbench/trace.hpp"

namespace fastbench {

struct SimOptions {
  RoutingMode routing = RoutingMode::quota;
  std::uint64_t seed = 0;
  bool collect_paths = false;  // for small runs only
};

struct SimResult {
  std::uint64_t injected = 0;
  std::map<std::string, std::uint64_t> sink_counts;
  double min_latency_ms = 0.0;
  double max_latency_ms = 0.0;
  /// Per event, the task-index walk from source to sink (when collect_paths).
  std::vector<std::vector<int>> paths;
};

/// Deterministic single-threaded execution of the topology over a trace:
/// virtual clock, multi-server FIFO queueing per task, no real sleeping.
/// Latency samples land in `buffer` when provided.
SimResult run_sim(const TopologySpec& topo, const ParallelismMap& par, const SimOptions& opts,
                  const Trace& trace, MetricsRecorder::Buffer* buffer = nullptr);

}  // namespace fastbench
