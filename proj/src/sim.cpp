#include "fastbench/sim.hpp"

#include <algorithm>
#include <queue>

namespace fastbench {

namespace {

struct SimEnvelope {
  std::uint32_t rec = 0;       // index into trace.records
  std::uint32_t path_id = 0;   // index into paths when collecting
};

struct SimEvent {
  double time = 0.0;
  std::uint64_t seq = 0;  // deterministic tiebreak
  int task = 0;           // arrival target
  SimEnvelope env;
};

struct Later {
  bool operator()(const SimEvent& a, const SimEvent& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }
};

}  // namespace

SimResult run_sim(const TopologySpec& topo, const ParallelismMap& par, const SimOptions& opts,
                  const Trace& trace, MetricsRecorder::Buffer* buffer) {
  require_valid(topo);
  {
    auto v = validate_parallelism(topo, par);
    if (!v.empty()) throw ValidationError("sim: " + v.front());
  }

  const int ntasks = static_cast<int>(topo.tasks.size());
  int source = -1;
  for (int i = 0; i < ntasks; ++i)
    if (topo.tasks[i].kind == TaskKind::source) source = i;

  // Outgoing edge table and per-task routers.
  std::vector<std::vector<int>> out_to(ntasks);
  std::vector<EdgeRouter> routers;
  routers.reserve(ntasks);
  std::vector<int> router_of(ntasks, -1);
  for (int i = 0; i < ntasks; ++i) {
    std::vector<double> sel;
    for (const auto& e : topo.edges) {
      if (topo.task_index(e.from) != i) continue;
      out_to[i].push_back(topo.task_index(e.to));
      sel.push_back(e.selectivity);
    }
    if (!sel.empty()) {
      router_of[i] = static_cast<int>(routers.size());
      routers.emplace_back(std::move(sel), opts.routing,
                           opts.seed ^ (0x9e3779b97f4a7c15ull * (i + 1)));
    }
  }

  // Multi-server FIFO per task: a min-heap of server-free times. Arrivals are
  // processed in chronological order, so taking the earliest free server
  // preserves FIFO service order.
  std::vector<std::priority_queue<double, std::vector<double>, std::greater<double>>> free_at(
      ntasks);
  for (int i = 0; i < ntasks; ++i) {
    if (i == source) continue;
    int n = par.threads.at(topo.tasks[i].name);
    for (int s = 0; s < n; ++s) free_at[i].push(0.0);
  }

  std::vector<int> sink_index(ntasks, -1);
  SimResult result;
  for (int i = 0; i < ntasks; ++i)
    if (topo.tasks[i].kind == TaskKind::sink) result.sink_counts[topo.tasks[i].name] = 0;

  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap;
  std::uint64_t seq = 0;

  // Injection: every trace record leaves the source at its offset.
  for (std::uint32_t i = 0; i < trace.records.size(); ++i) {
    SimEvent ev;
    ev.time = static_cast<double>(trace.records[i].offset_ms);
    ev.seq = seq++;
    SimEnvelope env;
    env.rec = i;
    if (opts.collect_paths) {
      env.path_id = static_cast<std::uint32_t>(result.paths.size());
      result.paths.push_back({source});
    }
    ev.env = env;
    int rid = router_of[source];
    ev.task = out_to[source][routers[rid].choose()];
    heap.push(ev);
    ++result.injected;
  }

  bool any_latency = false;
  while (!heap.empty()) {
    SimEvent ev = heap.top();
    heap.pop();
    const int k = ev.task;
    if (opts.collect_paths) result.paths[ev.env.path_id].push_back(k);
    auto& servers = free_at[k];
    const double start = std::max(ev.time, servers.top());
    servers.pop();
    const double done = start + topo.tasks[k].service_latency_ms;
    servers.push(done);

    if (topo.tasks[k].kind == TaskKind::sink) {
      const auto& rec = trace.records[ev.env.rec];
      const double ingress = static_cast<double>(rec.offset_ms);
      const double latency = done - ingress;
      if (!any_latency || latency < result.min_latency_ms) result.min_latency_ms = latency;
      if (!any_latency || latency > result.max_latency_ms) result.max_latency_ms = latency;
      any_latency = true;
      result.sink_counts[topo.tasks[k].name] += 1;
      if (buffer) {
        LatencySample s;
        s.event_id = rec.id;
        s.ingress_ms = ingress;
        s.egress_ms = done;
        s.size_bytes = rec.size_bytes;
        // sink index = position among sinks in task order
        int si = 0;
        for (int i = 0; i < k; ++i)
          if (topo.tasks[i].kind == TaskKind::sink) ++si;
        s.sink = si;
        buffer->record(s);
      }
      continue;
    }
    SimEvent next;
    next.time = done;
    next.seq = seq++;
    next.env = ev.env;
    int rid = router_of[k];
    next.task = out_to[k][routers[rid].choose()];
    heap.push(next);
  }
  (void)sink_index;
  return result;
}

}  // namespace fastbench
