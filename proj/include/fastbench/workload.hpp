#pragma once

#include <string>
#include <vector>

#include "fastbench/distributions.hpp"
#include "fastbench/router.hpp"
#include "fastbench/topology.hpp"

namespace fastbench {

struct PlannerInputs {
  double peak_rate_per_s = 0.0;
  double headroom = 1.3;
  int threads_per_node_cap = 8;
  int slots_per_node = 8;
};

/// A complete benchmark workload: dataflow, input distributions, SLA and
/// planner inputs. Immutable after load.
struct WorkloadSpec {
  std::string name;
  TopologySpec topology;
  RateProfile profile;  // events/second buckets, time compression applied
  SizeHistogram histogram;
  double sla_ms = 0.0;
  RoutingMode default_routing = RoutingMode::quota;
  PlannerInputs planner;
  double bucket_s = 3600.0;  // reporting bucket = profile bucket duration
  double time_compression = 1.0;
  std::vector<std::string> notes;

  std::uint64_t digest() const;
  /// Sink names in task declaration order (metrics sink table).
  std::vector<std::string> sink_names() const;
};

/// Parses and fully validates a workload JSON document. Schema violations
/// raise ValidationError with path-to-field diagnostics.
WorkloadSpec parse_workload(const std::string& json_text, const std::string& origin);

/// Loads a workload file from disk.
WorkloadSpec load_workload(const std::string& path);

/// Returns a shipped workload by name; equal to loading the shipped file.
/// Unknown names raise ValidationError listing the available workloads.
WorkloadSpec builtin_workload(const std::string& name);

std::vector<std::string> builtin_workload_names();

}  // namespace fastbench
