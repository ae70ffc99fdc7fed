#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "fastbench/engine.hpp"
#include "fastbench/metrics.hpp"
#include "fastbench/parallelism.hpp"
#include "fastbench/replay.hpp"
#include "fastbench/workload.hpp"

namespace fastbench {

struct RunConfig {
  std::uint64_t seed = 1;
  double time_scale = 1.0;
  double rate_scale = 1.0;
  double duration_cap_s = 0.0;  // 0 = full profile span
  std::optional<RoutingMode> routing;  // empty = workload default
  std::optional<ParallelismMap> parallelism;  // empty = planner (auto)
  double headroom = 0.0;  // 0 = workload default
  std::size_t queue_capacity = 10000;
  bool sim = false;
  bool host_cpu = false;
  double drain_timeout_s = 300.0;
  Arrivals arrivals = Arrivals::even;
  int replay_workers = 1;
  std::optional<Trace> trace;  // pre-generated; otherwise generated from cfg
};

struct RunOutcome {
  RunReport report;
  ReplayStats replay;  // zeroed in sim mode
  std::uint64_t injected = 0;
  std::map<std::string, std::uint64_t> sink_counts;
  bool timed_out = false;
  std::string diagnostics;
  std::uint64_t backlog_at_injection_end = 0;
  std::vector<DepthSample> depth_samples;
  ParallelismMap parallelism;
};

/// Loads `name_or_path` as a file when one exists, else as a builtin.
WorkloadSpec resolve_workload(const std::string& name_or_path);

/// Effective input profile for a run: rate-scaled and duration-capped.
RateProfile effective_profile(const WorkloadSpec& w, const RunConfig& cfg);

/// The planner map for a run (workload planner inputs, rate scale applied).
ParallelismMap planned_parallelism(const WorkloadSpec& w, const RunConfig& cfg);

/// Full pipeline: (generate or take trace) -> plan -> execute (engine or
/// deterministic sim) -> drain -> finalize.
RunOutcome run_benchmark(const WorkloadSpec& w, const RunConfig& cfg);

}  // namespace fastbench
