#include "fastbench/synthetic_work.hpp"

#include <time.h>

#include <chrono>
#include <cstdint>
#include <thread>

namespace fastbench {

namespace {

double cpu_clock_ms(clockid_t id) {
  struct timespec ts;
  if (clock_gettime(id, &ts) != 0) return 0.0;
  return static_cast<double>(ts.tv_sec) * 1000.0 + static_cast<double>(ts.tv_nsec) / 1e6;
}

}  // namespace

double thread_cpu_ms() { return cpu_clock_ms(CLOCK_THREAD_CPUTIME_ID); }
double process_cpu_ms() { return cpu_clock_ms(CLOCK_PROCESS_CPUTIME_ID); }

double synthetic_work(double latency_ms, ResourceClass cls) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double, std::milli>(latency_ms));
  if (latency_ms > 0.0) {
    if (cls == ResourceClass::idle) {
      std::this_thread::sleep_until(deadline);
    } else {
      // Busy in-memory byte shuffling; the clock is checked every pass so
      // short latencies stay accurate.
      std::uint8_t buf[256];
      for (int i = 0; i < 256; ++i) buf[i] = static_cast<std::uint8_t>(i);
      std::uint64_t x = 0x243f6a8885a308d3ull;
      while (Clock::now() < deadline) {
        for (int i = 0; i < 256; ++i) {
          x ^= x << 13;
          x ^= x >> 7;
          x ^= x << 17;
          buf[i] = static_cast<std::uint8_t>(buf[(i * 131) & 255] ^ x);
        }
      }
      // Keep the buffer observable so the loop is not optimized away.
      volatile std::uint8_t sink = buf[x & 255];
      (void)sink;
    }
  }
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace fastbench
