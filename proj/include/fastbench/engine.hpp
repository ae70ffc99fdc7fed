#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "fastbench/metrics.hpp"
#include "fastbench/parallelism.hpp"
#include "fastbench/router.hpp"
#include "fastbench/trace.hpp"

namespace fastbench {

struct EngineOptions {
  RoutingMode routing = RoutingMode::quota;
  std::uint64_t seed = 0;
  std::size_t queue_capacity = 10000;     // per edge
  double drain_timeout_s = 120.0;         // watchdog
  double depth_sample_interval_s = 0.25;  // queue depth sampling
};

struct DepthSample {
  double t_s = 0.0;
  std::size_t max_edge_depth = 0;  // max depth across edges since last sample
};

struct DrainResult {
  std::uint64_t injected = 0;
  std::map<std::string, std::uint64_t> sink_counts;
  bool timed_out = false;
  std::string diagnostics;  // queue depth dump when timed out
};

/// Executes a topology for real: one thread per parallelism unit per task,
/// bounded FIFO queues on every edge, blocking enqueue (backpressure),
/// synthetic work per task, selectivity routing.
class RunningTopology {
 public:
  RunningTopology(const TopologySpec& topo, const ParallelismMap& par,
                  const EngineOptions& opts, MetricsRecorder& recorder);
  ~RunningTopology();

  RunningTopology(const RunningTopology&) = delete;
  RunningTopology& operator=(const RunningTopology&) = delete;

  /// Consumer endpoint for generator::replay. Blocks when the source's
  /// outgoing queue is full. Throws after drain() has been initiated.
  void inject(const EventRecord& ev, double ingress_ms);

  /// Completes all in-flight events, joins all threads, returns final counts.
  DrainResult drain();

  std::uint64_t thread_census() const;
  std::uint64_t injected() const { return injected_; }

  /// Events injected but not yet terminal. Exact only while injection is
  /// quiescent.
  std::uint64_t backlog() const;

  const std::vector<DepthSample>& depth_samples() const { return depth_samples_; }

 private:
  struct Envelope {
    EventRecord ev;
    double ingress_ms = 0.0;
  };

  struct Edge {
    int to = -1;
    std::deque<Envelope> q;
    std::size_t max_depth = 0;
    bool closed = false;
  };

  struct Task;
  void worker_loop(int task_index);
  void push_edge(int edge_index, Envelope&& env);
  void close_task_outputs(int task_index);

  const TopologySpec& topo_;
  EngineOptions opts_;
  MetricsRecorder& recorder_;
  std::vector<std::unique_ptr<Task>> tasks_;
  std::vector<Edge*> edges_;  // owned by consumer task
  std::vector<std::vector<int>> out_edges_;  // per task, edge indices
  std::vector<std::thread> threads_;
  std::thread depth_sampler_;
  std::atomic<bool> draining_{false};
  std::atomic<bool> stop_sampler_{false};
  std::atomic<std::uint64_t> injected_{0};
  std::atomic<std::uint64_t> completed_{0};
  std::vector<DepthSample> depth_samples_;
  int source_ = -1;
  bool drained_ = false;
};

}  // namespace fastbench
