#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fastbench/trace.hpp"

namespace fastbench {

/// Consumer invoked once per event with the event and its ingress timestamp
/// (ms since replay start, monotonic clock). Must be callable from multiple
/// emitter workers concurrently.
using EventConsumer = std::function<void(const EventRecord&, double ingress_ms)>;

struct ReplayOptions {
  double time_scale = 1.0;      // >1 speeds up, <1 slows down
  int workers = 1;              // emitter threads; 1 preserves global order
  double stall_budget_ms = 10000.0;  // abort when this far behind schedule
  double spin_threshold_ms = 2.0;    // coarse sleep until this close, then spin
};

struct ReplayStats {
  std::uint64_t emitted = 0;
  double p50_error_ms = 0.0;   // absolute scheduling error percentiles
  double p95_error_ms = 0.0;
  double max_error_ms = 0.0;
  double span_ms = 0.0;        // wall-clock first-to-last emission span
  bool aborted = false;        // stall budget exceeded (backpressure)
  double worst_lateness_ms = 0.0;
  std::uint64_t remaining = 0;  // events not emitted when aborted
};

/// Replays a trace at wall-clock speed: event i is emitted at
/// start + offset_i / time_scale. Inter-arrival gaps scale; nothing else does.
ReplayStats replay(const Trace& trace, const ReplayOptions& opts, const EventConsumer& emit);

}  // namespace fastbench
