#include <cmath>

#include "doctest.h"
#include "fastbench/sim.hpp"
#include "fastbench/topology.hpp"
#include "fastbench/workload.hpp"
#include "helpers.hpp"

using namespace fastbench;
using fastbench::testutil::linear_topology;

namespace {

Trace even_trace(double duration_s, double rate_per_s) {
  RateProfile p;
  p.buckets = {{duration_s, rate_per_s}};
  SizeHistogram h;
  h.bins = {{100, 101, 1.0}};
  return generate(p, h, 1);
}

ParallelismMap ones(const TopologySpec& topo) {
  ParallelismMap par;
  for (const auto& t : topo.tasks)
    if (t.kind != TaskKind::source) par.threads[t.name] = 1;
  return par;
}

}  // namespace

TEST_CASE("unloaded pipeline latency equals the service-time sum exactly") {
  auto topo = linear_topology({10.0, 20.0, 5.0}, 3.0);
  // One event every 100 ms against 38 ms of total service: no queueing.
  Trace t = even_trace(2.0, 10.0);
  MetricsRecorder rec({"k"});
  auto buf = rec.make_buffer();
  SimResult r = run_sim(topo, ones(topo), {}, t, buf.get());
  CHECK(r.injected == 20);
  CHECK(r.sink_counts.at("k") == 20);
  CHECK(r.min_latency_ms == 38.0);  // exact, virtual clock
  CHECK(r.max_latency_ms == 38.0);
  RunReport rep = rec.finalize(1000.0, 60.0, {});
  CHECK(rep.total == 20);
  for (const auto& s : rep.samples) CHECK(s.egress_ms - s.ingress_ms == 38.0);
}

TEST_CASE("single server queues FIFO when overloaded") {
  auto topo = linear_topology({10.0});
  // 10 events at t=0,1,2,... against a 10 ms server: event i starts at 10*i.
  RateProfile p;
  p.buckets = {{0.01, 1000.0}};
  SizeHistogram h;
  h.bins = {{100, 101, 1.0}};
  Trace t = generate(p, h, 1);
  REQUIRE(t.records.size() == 10);
  MetricsRecorder rec({"k"});
  auto buf = rec.make_buffer();
  run_sim(topo, ones(topo), {}, t, buf.get());
  RunReport rep = rec.finalize(1e9, 60.0, {});
  REQUIRE(rep.samples.size() == 10);
  for (int i = 0; i < 10; ++i) {
    // worker busy until 10*(i+1), sink (0 ms) immediate after.
    CHECK(rep.samples[i].egress_ms == doctest::Approx(10.0 * (i + 1)));
  }
}

TEST_CASE("extra servers remove the queueing") {
  auto topo = linear_topology({10.0});
  RateProfile p;
  p.buckets = {{0.01, 1000.0}};
  SizeHistogram h;
  h.bins = {{100, 101, 1.0}};
  Trace t = generate(p, h, 1);
  ParallelismMap par = ones(topo);
  par.threads["w1"] = 10;
  MetricsRecorder rec({"k"});
  auto buf = rec.make_buffer();
  SimResult r = run_sim(topo, par, {}, t, buf.get());
  CHECK(r.min_latency_ms == 10.0);
  CHECK(r.max_latency_ms == 10.0);
}

TEST_CASE("conservation and quota sink fractions on the enrollment dataflow") {
  WorkloadSpec w = builtin_workload("enrollment");
  Trace t = even_trace(100.0, 100.0);  // 10000 events
  ParallelismMap par = ones(w.topology);
  SimOptions opts;
  opts.routing = RoutingMode::quota;
  SimResult r = run_sim(w.topology, par, opts, t);
  std::uint64_t sunk = 0;
  for (const auto& [_, n] : r.sink_counts) sunk += n;
  CHECK(r.injected == 10000);
  CHECK(sunk == r.injected);  // exact conservation
  auto term = terminal_probabilities(w.topology);
  for (const auto& [name, n] : r.sink_counts) {
    const double frac = static_cast<double>(n) / 10000.0;
    CHECK(std::abs(frac - term.at(name)) < 0.001);
  }
}

TEST_CASE("sim runs are deterministic per seed") {
  WorkloadSpec w = builtin_workload("enrollment");
  Trace t = even_trace(10.0, 100.0);
  SimOptions opts;
  opts.seed = 42;
  opts.routing = RoutingMode::probabilistic;
  SimResult a = run_sim(w.topology, ones(w.topology), opts, t);
  SimResult b = run_sim(w.topology, ones(w.topology), opts, t);
  CHECK(a.sink_counts == b.sink_counts);
  CHECK(a.min_latency_ms == b.min_latency_ms);
  CHECK(a.max_latency_ms == b.max_latency_ms);
}

TEST_CASE("collected paths walk source to sink along real edges") {
  WorkloadSpec w = builtin_workload("enrollment");
  Trace t = even_trace(1.0, 20.0);
  SimOptions opts;
  opts.collect_paths = true;
  SimResult r = run_sim(w.topology, ones(w.topology), opts, t);
  REQUIRE(r.paths.size() == 20);
  for (const auto& path : r.paths) {
    REQUIRE(path.size() >= 2);
    CHECK(w.topology.tasks[path.front()].kind == TaskKind::source);
    CHECK(w.topology.tasks[path.back()].kind == TaskKind::sink);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      bool edge_exists = false;
      for (const auto& e : w.topology.edges)
        if (w.topology.task_index(e.from) == path[i] &&
            w.topology.task_index(e.to) == path[i + 1])
          edge_exists = true;
      CHECK(edge_exists);
    }
  }
}

TEST_CASE("sim refuses invalid parallelism") {
  auto topo = linear_topology({1.0});
  ParallelismMap par;
  par.threads["w1"] = 1;  // sink missing
  CHECK_THROWS_AS(run_sim(topo, par, {}, even_trace(1.0, 1.0)), ValidationError);
}
