#pragma once

#include "fastbench/topology.hpp"

namespace fastbench {

/// Consumes the given latency: cpu class busy-transforms an in-memory buffer
/// until the interval elapses, idle class sleeps. Returns elapsed ms.
double synthetic_work(double latency_ms, ResourceClass cls);

/// CPU time consumed by the calling thread, in ms.
double thread_cpu_ms();

/// CPU time consumed by the whole process, in ms.
double process_cpu_ms();

}  // namespace fastbench
