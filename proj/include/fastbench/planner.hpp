#pragma once

#include "fastbench/parallelism.hpp"
#include "fastbench/topology.hpp"

namespace fastbench {

/// Inputs to thread-count and node sizing.
struct PlanInput {
  const TopologySpec* topology = nullptr;
  double peak_rate_per_s = 0.0;
  double headroom = 1.3;       // multiplicative safety factor, >= 1
  int threads_per_node_cap = 8;
  int slots_per_node = 8;
};

/// Little's-law sizing per non-source task:
///   threads_t = max(1, ceil(peak_rate * reach_t * latency_t / 1000 * headroom))
/// where reach_t is the probability an event reaches t, so planning respects
/// selectivity-thinned downstream load.
ParallelismMap min_parallelism(const PlanInput& plan);

/// Nodes needed: ceil(total threads / threads_per_node_cap); 0 when the map
/// is empty.
int slot_allocation(const ParallelismMap& par, const PlanInput& plan);

}  // namespace fastbench
