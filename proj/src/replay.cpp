#include "fastbench/replay.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

namespace fastbench {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double nearest_rank(std::vector<double>& sorted_vals, double pct) {
  if (sorted_vals.empty()) return 0.0;
  std::size_t n = sorted_vals.size();
  std::size_t rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * static_cast<double>(n)));
  if (rank == 0) rank = 1;
  if (rank > n) rank = n;
  return sorted_vals[rank - 1];
}

}  // namespace

ReplayStats replay(const Trace& trace, const ReplayOptions& opts, const EventConsumer& emit) {
  if (opts.time_scale <= 0.0) throw ValidationError("replay: time_scale must be positive");
  if (opts.workers < 1) throw ValidationError("replay: workers must be >= 1");

  const std::size_t n = trace.records.size();
  const int workers = static_cast<int>(std::min<std::size_t>(opts.workers, std::max<std::size_t>(n, 1)));
  std::atomic<bool> abort{false};
  std::atomic<std::uint64_t> emitted{0};
  std::vector<std::vector<double>> errors(workers);
  std::vector<double> first_emit(workers, 0.0), last_emit(workers, 0.0);
  std::vector<double> worst_late(workers, 0.0);

  const Clock::time_point start = Clock::now();
  auto run_worker = [&](int w) {
    auto& errs = errors[w];
    errs.reserve(n / workers + 1);
    bool first = true;
    // Round-robin assignment keeps per-worker emission in id order.
    for (std::size_t i = static_cast<std::size_t>(w); i < n; i += workers) {
      if (abort.load(std::memory_order_relaxed)) return;
      const EventRecord& ev = trace.records[i];
      const double target = static_cast<double>(ev.offset_ms) / opts.time_scale;
      double now = ms_since(start);
      if (target - now > opts.spin_threshold_ms) {
        auto wake = start + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double, std::milli>(
                                    target - opts.spin_threshold_ms));
        std::this_thread::sleep_until(wake);
        now = ms_since(start);
      }
      while (now < target) now = ms_since(start);
      emit(ev, now);
      emitted.fetch_add(1, std::memory_order_relaxed);
      const double after = ms_since(start);
      const double lateness = after - target;
      if (lateness > worst_late[w]) worst_late[w] = lateness;
      errs.push_back(std::abs(now - target));
      if (first) {
        first_emit[w] = now;
        first = false;
      }
      last_emit[w] = after;
      if (lateness > opts.stall_budget_ms) {
        abort.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  if (workers == 1) {
    run_worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(run_worker, w);
    for (auto& t : pool) t.join();
  }

  ReplayStats stats;
  stats.emitted = emitted.load();
  stats.aborted = abort.load();
  stats.remaining = static_cast<std::uint64_t>(n) - stats.emitted;
  std::vector<double> all;
  for (auto& e : errors) all.insert(all.end(), e.begin(), e.end());
  std::sort(all.begin(), all.end());
  stats.p50_error_ms = nearest_rank(all, 50.0);
  stats.p95_error_ms = nearest_rank(all, 95.0);
  stats.max_error_ms = all.empty() ? 0.0 : all.back();
  double first = 0.0, last = 0.0;
  bool any = false;
  for (int w = 0; w < workers; ++w) {
    if (errors[w].empty()) continue;
    if (!any || first_emit[w] < first) first = first_emit[w];
    if (!any || last_emit[w] > last) last = last_emit[w];
    any = true;
  }
  stats.span_ms = any ? last - first : 0.0;
  for (double l : worst_late) stats.worst_lateness_ms = std::max(stats.worst_lateness_ms, l);
  return stats;
}

}  // namespace fastbench
