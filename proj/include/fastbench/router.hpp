#pragma once

#include <cstdint>
#include <vector>

#include "fastbench/common.hpp"

namespace fastbench {

enum class RoutingMode { probabilistic, quota };

/// Chooses one outgoing edge per event for a single task.
///
/// Probabilistic mode draws from the seeded rng proportionally to
/// selectivity. Quota mode keeps an error-diffusion credit per edge so that
/// after N events each edge count tracks N * selectivity to within 1 at every
/// prefix. Not thread-safe; callers serialize per task.
class EdgeRouter {
 public:
  EdgeRouter(std::vector<double> selectivities, RoutingMode mode, std::uint64_t seed);

  /// Returns the index of the chosen edge.
  int choose();

  int edge_count() const { return static_cast<int>(sel_.size()); }

 private:
  std::vector<double> sel_;
  std::vector<double> credit_;
  RoutingMode mode_;
  Rng rng_;
};

std::string to_string(RoutingMode m);
RoutingMode routing_mode_from_string(const std::string& s);

}  // namespace fastbench
