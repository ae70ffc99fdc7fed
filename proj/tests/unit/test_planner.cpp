#include "doctest.h"
#include "fastbench/planner.hpp"
#include "fastbench/workload.hpp"
#include "helpers.hpp"

using namespace fastbench;
using fastbench::testutil::fork_topology;

TEST_CASE("Little's law sizing on the authentication pipeline") {
  WorkloadSpec w = builtin_workload("authentication");
  PlanInput plan;
  plan.topology = &w.topology;
  plan.peak_rate_per_s = 500.0;

  SUBCASE("no headroom: ceil(rate * latency) per stage") {
    plan.headroom = 1.0;
    ParallelismMap p = min_parallelism(plan);
    // 500/s * 0.005 s = 2.5 -> 3 for each of the six 5 ms stages,
    // 500 * 0.010 = 5, 500 * 0.210 = 105.
    CHECK(p.threads.at("PacketValidation") == 3);
    CHECK(p.threads.at("QueryResidentData") == 5);
    CHECK(p.threads.at("BiometricDemographicMatch") == 105);
    CHECK(p.total() == 128);
    // At least rate * end-to-end latency threads in total.
    CHECK(p.total() >= 500.0 * 0.250);
  }
  SUBCASE("deployed headroom reproduces the 514-thread, 19-node plan") {
    plan.headroom = 4.06;
    plan.threads_per_node_cap = 28;
    ParallelismMap p = min_parallelism(plan);
    CHECK(p.total() == 514);
    CHECK(slot_allocation(p, plan) == 19);
  }
}

TEST_CASE("deployed enrollment plan: 475 threads on 9 nodes") {
  WorkloadSpec w = builtin_workload("enrollment");
  PlanInput plan;
  plan.topology = &w.topology;
  plan.peak_rate_per_s = w.planner.peak_rate_per_s;
  plan.headroom = w.planner.headroom;
  plan.threads_per_node_cap = w.planner.threads_per_node_cap;
  CHECK(plan.peak_rate_per_s == doctest::Approx(65000.0 / 3600.0));
  ParallelismMap p = min_parallelism(plan);
  CHECK(p.total() == 475);
  CHECK(slot_allocation(p, plan) == 9);
}

TEST_CASE("planning respects selectivity-thinned downstream load") {
  auto topo = fork_topology(0.1, 100.0);
  topo.tasks[2].service_latency_ms = 100.0;  // ok sink
  topo.tasks[3].service_latency_ms = 100.0;  // bad sink
  PlanInput plan;
  plan.topology = &topo;
  plan.peak_rate_per_s = 100.0;
  plan.headroom = 1.0;
  ParallelismMap p = min_parallelism(plan);
  CHECK(p.threads.at("a") == 10);    // full rate
  CHECK(p.threads.at("ok") == 1);    // 10% of the rate
  CHECK(p.threads.at("bad") == 9);   // 90% of the rate
}

TEST_CASE("every task gets at least one thread") {
  auto topo = fork_topology(0.5, 1.0);
  PlanInput plan;
  plan.topology = &topo;
  plan.peak_rate_per_s = 0.001;
  plan.headroom = 1.0;
  ParallelismMap p = min_parallelism(plan);
  for (const auto& [_, n] : p.threads) CHECK(n == 1);
  CHECK(validate_parallelism(topo, p).empty());
}

TEST_CASE("planner input validation") {
  auto topo = fork_topology(0.5);
  PlanInput plan;
  plan.topology = &topo;
  plan.peak_rate_per_s = 10.0;
  plan.headroom = 0.9;
  CHECK_THROWS_AS(min_parallelism(plan), ValidationError);
  plan.headroom = 1.0;
  plan.peak_rate_per_s = -1.0;
  CHECK_THROWS_AS(min_parallelism(plan), ValidationError);
  plan.topology = nullptr;
  CHECK_THROWS_AS(min_parallelism(plan), ValidationError);
}

TEST_CASE("slot allocation rounds up") {
  ParallelismMap p;
  p.threads = {{"a", 9}};
  PlanInput plan;
  plan.threads_per_node_cap = 4;
  CHECK(slot_allocation(p, plan) == 3);
  CHECK(slot_allocation(ParallelismMap{}, plan) == 0);
  plan.threads_per_node_cap = 0;
  CHECK_THROWS_AS(slot_allocation(p, plan), ValidationError);
}
