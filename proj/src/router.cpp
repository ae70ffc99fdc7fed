#include "fastbench/router.hpp"

#include <cmath>

namespace fastbench {

EdgeRouter::EdgeRouter(std::vector<double> selectivities, RoutingMode mode, std::uint64_t seed)
    : sel_(std::move(selectivities)), mode_(mode), rng_(seed) {
  if (sel_.empty()) throw ValidationError("router: no outgoing edges");
  double sum = 0.0;
  for (double s : sel_) {
    if (s < 0.0 || s > 1.0) throw ValidationError("router: selectivity out of [0,1]");
    sum += s;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("router: selectivities must sum to 1");
  credit_.assign(sel_.size(), 0.0);
}

int EdgeRouter::choose() {
  if (mode_ == RoutingMode::probabilistic) {
    double u = rng_.next_double();
    double cum = 0.0;
    for (std::size_t i = 0; i < sel_.size(); ++i) {
      cum += sel_[i];
      if (u < cum) return static_cast<int>(i);
    }
    return static_cast<int>(sel_.size()) - 1;
  }
  // Quota: add each edge's selectivity as credit, route on the largest
  // credit, charge the chosen edge one unit.
  int best = 0;
  for (std::size_t i = 0; i < sel_.size(); ++i) {
    credit_[i] += sel_[i];
    if (credit_[i] > credit_[best]) best = static_cast<int>(i);
  }
  credit_[best] -= 1.0;
  return best;
}

std::string to_string(RoutingMode m) {
  return m == RoutingMode::quota ? "quota" : "prob";
}

RoutingMode routing_mode_from_string(const std::string& s) {
  if (s == "quota") return RoutingMode::quota;
  if (s == "prob" || s == "probabilistic") return RoutingMode::probabilistic;
  throw ValidationError("unknown routing mode: " + s);
}

}  // namespace fastbench
