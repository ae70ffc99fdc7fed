#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "doctest.h"
#include "fastbench/replay.hpp"

using namespace fastbench;

namespace {

Trace burst_trace(int count, std::int64_t gap_ms) {
  Trace t;
  for (int i = 0; i < count; ++i)
    t.records.push_back({static_cast<std::uint64_t>(i), i * gap_ms, 100});
  return t;
}

}  // namespace

TEST_CASE("replay emits every event with small scheduling error") {
  Trace t = burst_trace(200, 5);  // one second at 200 ev/s
  std::atomic<std::uint64_t> seen{0};
  ReplayStats s = replay(t, {}, [&](const EventRecord&, double) { seen.fetch_add(1); });
  CHECK(seen.load() == 200);
  CHECK(s.emitted == 200);
  CHECK_FALSE(s.aborted);
  CHECK(s.remaining == 0);
  CHECK(s.p95_error_ms <= 5.0);
  CHECK(s.span_ms > 900.0);
  CHECK(s.span_ms < 1300.0);
}

TEST_CASE("time_scale divides inter-arrival gaps only") {
  Trace t = burst_trace(100, 10);  // nominally 1 s
  ReplayOptions opts;
  opts.time_scale = 10.0;
  ReplayStats s = replay(t, opts, [](const EventRecord&, double) {});
  CHECK(s.emitted == 100);
  CHECK(s.span_ms < 300.0);  // ~99 ms scaled
  opts.time_scale = 0.5;
  Trace slow = burst_trace(20, 10);  // 190 ms nominal, 380 ms scaled
  ReplayStats s2 = replay(slow, opts, [](const EventRecord&, double) {});
  CHECK(s2.span_ms > 330.0);
}

TEST_CASE("ingress timestamps are monotone and close to the schedule") {
  Trace t = burst_trace(50, 10);
  std::vector<double> stamps;
  replay(t, {}, [&](const EventRecord&, double ingress_ms) { stamps.push_back(ingress_ms); });
  REQUIRE(stamps.size() == 50);
  for (std::size_t i = 1; i < stamps.size(); ++i) CHECK(stamps[i] >= stamps[i - 1]);
  for (std::size_t i = 0; i < stamps.size(); ++i)
    CHECK(stamps[i] >= static_cast<double>(t.records[i].offset_ms));
}

TEST_CASE("multiple workers keep per-worker id order") {
  Trace t = burst_trace(400, 1);
  ReplayOptions opts;
  opts.workers = 4;
  std::mutex mu;
  std::map<std::thread::id, std::uint64_t> last;
  bool ordered = true;
  ReplayStats s = replay(t, opts, [&](const EventRecord& ev, double) {
    std::lock_guard<std::mutex> lk(mu);
    auto it = last.find(std::this_thread::get_id());
    if (it != last.end() && ev.id <= it->second) ordered = false;
    last[std::this_thread::get_id()] = ev.id;
  });
  CHECK(s.emitted == 400);
  CHECK(ordered);
  CHECK(last.size() <= 4);
}

TEST_CASE("a stalled consumer trips the stall budget and aborts") {
  Trace t = burst_trace(100, 1);
  ReplayOptions opts;
  opts.stall_budget_ms = 80.0;
  int emitted = 0;
  ReplayStats s = replay(t, opts, [&](const EventRecord&, double) {
    ++emitted;
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  });
  CHECK(s.aborted);
  CHECK(s.remaining > 0);
  CHECK(s.emitted == static_cast<std::uint64_t>(emitted));
  CHECK(s.emitted + s.remaining == 100);
  CHECK(s.worst_lateness_ms > opts.stall_budget_ms);
}

TEST_CASE("replay rejects invalid options and handles an empty trace") {
  Trace t;
  CHECK(replay(t, {}, [](const EventRecord&, double) {}).emitted == 0);
  ReplayOptions bad;
  bad.time_scale = 0.0;
  CHECK_THROWS_AS(replay(t, bad, [](const EventRecord&, double) {}), ValidationError);
  bad.time_scale = 1.0;
  bad.workers = 0;
  CHECK_THROWS_AS(replay(t, bad, [](const EventRecord&, double) {}), ValidationError);
}
