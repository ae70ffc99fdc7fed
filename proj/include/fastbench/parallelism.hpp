#pragma once

#include <map>
#include <string>
#include <vector>

#include "fastbench/topology.hpp"

namespace fastbench {

/// Thread count per non-source task (workers and sinks; the source is driven
/// by the replayer and owns no pool thread).
struct ParallelismMap {
  std::map<std::string, int> threads;

  std::uint64_t total() const;
};

/// Every non-source task present with a count >= 1; empty result = valid.
std::vector<std::string> validate_parallelism(const TopologySpec& topo,
                                              const ParallelismMap& par);

/// Uniform spread of `total` threads across all non-source tasks (earlier
/// tasks in declaration order absorb the remainder).
ParallelismMap uniform_parallelism(const TopologySpec& topo, std::uint64_t total);

/// Halves every count, clamping at 1.
ParallelismMap halve_parallelism(const ParallelismMap& par);

}  // namespace fastbench
