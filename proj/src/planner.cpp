#include "fastbench/planner.hpp"

#include <cmath>

namespace fastbench {

ParallelismMap min_parallelism(const PlanInput& plan) {
  if (!plan.topology) throw ValidationError("planner: no topology");
  if (plan.peak_rate_per_s < 0.0) throw ValidationError("planner: negative peak rate");
  if (plan.headroom < 1.0) throw ValidationError("planner: headroom must be >= 1");
  const TopologySpec& topo = *plan.topology;
  require_valid(topo);
  auto reach = reach_probabilities(topo);

  ParallelismMap par;
  for (const auto& t : topo.tasks) {
    if (t.kind == TaskKind::source) continue;
    const double demand =
        plan.peak_rate_per_s * reach[t.name] * t.service_latency_ms / 1000.0 * plan.headroom;
    auto threads = static_cast<long long>(std::ceil(demand - 1e-12));
    par.threads[t.name] = threads < 1 ? 1 : static_cast<int>(threads);
  }
  return par;
}

int slot_allocation(const ParallelismMap& par, const PlanInput& plan) {
  if (plan.threads_per_node_cap < 1)
    throw ValidationError("planner: threads_per_node_cap must be >= 1");
  const std::uint64_t total = par.total();
  if (total == 0) return 0;
  return static_cast<int>((total + plan.threads_per_node_cap - 1) /
                          static_cast<std::uint64_t>(plan.threads_per_node_cap));
}

}  // namespace fastbench
