#include "fastbench/runner.hpp"

#include <filesystem>
#include <sstream>

#include "fastbench/planner.hpp"
#include "fastbench/sim.hpp"

namespace fastbench {

WorkloadSpec resolve_workload(const std::string& name_or_path) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(name_or_path, ec)) return load_workload(name_or_path);
  return builtin_workload(name_or_path);
}

RateProfile effective_profile(const WorkloadSpec& w, const RunConfig& cfg) {
  RateProfile p = w.profile;
  if (cfg.rate_scale != 1.0) p = scale_rate(p, cfg.rate_scale);
  if (cfg.duration_cap_s > 0.0) p = clip_profile(p, cfg.duration_cap_s);
  return p;
}

ParallelismMap planned_parallelism(const WorkloadSpec& w, const RunConfig& cfg) {
  PlanInput plan;
  plan.topology = &w.topology;
  plan.peak_rate_per_s = w.planner.peak_rate_per_s * cfg.rate_scale;
  plan.headroom = cfg.headroom > 0.0 ? cfg.headroom : w.planner.headroom;
  plan.threads_per_node_cap = w.planner.threads_per_node_cap;
  plan.slots_per_node = w.planner.slots_per_node;
  return min_parallelism(plan);
}

RunOutcome run_benchmark(const WorkloadSpec& w, const RunConfig& cfg) {
  RunOutcome out;

  const Trace trace =
      cfg.trace ? *cfg.trace : generate(effective_profile(w, cfg), w.histogram, cfg.seed,
                                        cfg.arrivals);

  out.parallelism = cfg.parallelism ? *cfg.parallelism : planned_parallelism(w, cfg);
  if (auto bad = validate_parallelism(w.topology, out.parallelism); !bad.empty()) {
    std::ostringstream os;
    os << "parallelism invalid:";
    for (const auto& v : bad) os << "\n  - " << v;
    throw ValidationError(os.str());
  }

  const RoutingMode routing = cfg.routing.value_or(w.default_routing);

  MetricsRecorder recorder(w.sink_names());
  RunMeta meta;
  meta.workload = w.name;
  meta.workload_digest = hex64(w.digest());
  meta.seed = cfg.seed;
  meta.parallelism_total = out.parallelism.total();
  meta.routing = to_string(routing);
  meta.time_scale = cfg.time_scale;
  meta.sim = cfg.sim;

  // Real-time runs stamp events in wall ms, which is offset / time_scale; the
  // reporting bucket shrinks with it so bucket i still covers profile bucket i.
  const double bucket_s = cfg.sim ? w.bucket_s : w.bucket_s / cfg.time_scale;

  if (cfg.sim) {
    auto buffer = recorder.make_buffer();
    SimOptions so;
    so.routing = routing;
    so.seed = cfg.seed;
    SimResult sr = run_sim(w.topology, out.parallelism, so, trace, buffer.get());
    out.injected = sr.injected;
    out.sink_counts = sr.sink_counts;
    out.replay = ReplayStats{};
  } else {
    EngineOptions eo;
    eo.routing = routing;
    eo.seed = cfg.seed;
    eo.queue_capacity = cfg.queue_capacity;
    eo.drain_timeout_s = cfg.drain_timeout_s;
    RunningTopology rt(w.topology, out.parallelism, eo, recorder);

    recorder.start_cpu_sampler(1.0, cfg.host_cpu);
    ReplayOptions ro;
    ro.time_scale = cfg.time_scale;
    ro.workers = cfg.replay_workers;
    out.replay = replay(trace, ro, [&rt](const EventRecord& ev, double ingress_ms) {
      rt.inject(ev, ingress_ms);
    });
    out.backlog_at_injection_end = rt.backlog();

    DrainResult dr = rt.drain();
    out.injected = dr.injected;
    out.sink_counts = dr.sink_counts;
    out.timed_out = dr.timed_out;
    out.diagnostics = dr.diagnostics;
    out.depth_samples = rt.depth_samples();
  }

  out.report = recorder.finalize(w.sla_ms, bucket_s, meta);
  return out;
}

}  // namespace fastbench
