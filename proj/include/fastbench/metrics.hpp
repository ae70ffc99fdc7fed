#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fastbench {

/// One end-to-end latency measurement. Timestamps are ms relative to run
/// start; sink is an index into the recorder's sink-name table.
struct LatencySample {
  std::uint64_t event_id = 0;
  double ingress_ms = 0.0;
  double egress_ms = 0.0;
  int sink = 0;
  std::uint64_t size_bytes = 0;
};

struct BucketStat {
  int bucket = 0;
  double start_s = 0.0;
  std::uint64_t in_count = 0;
  std::uint64_t out_count = 0;
  double min_ms = 0.0;
  double median_ms = 0.0;
  double p95_ms = 0.0;
  double max_ms = 0.0;
  std::uint64_t violations = 0;
};

struct CpuSample {
  double t_s = 0.0;
  double util_pct = 0.0;
};

struct RunMeta {
  std::string workload;
  std::string workload_digest;
  std::uint64_t seed = 0;
  std::uint64_t parallelism_total = 0;
  std::string routing;
  double time_scale = 1.0;
  bool sim = false;
};

struct RunReport {
  std::vector<LatencySample> samples;  // sorted by event id
  std::vector<std::string> sink_names;
  std::vector<std::uint64_t> sink_counts;
  double sla_ms = 0.0;
  double bucket_s = 0.0;
  std::uint64_t total = 0;
  std::uint64_t violations = 0;
  double violation_fraction = 0.0;  // violations / total, 0 when empty
  std::vector<BucketStat> buckets;
  std::vector<CpuSample> cpu;
  bool cpu_available = false;
  std::uint64_t duplicates_rejected = 0;
  std::uint64_t invalid_rejected = 0;
  RunMeta meta;
};

/// Collects latency samples from worker threads via per-thread buffers and
/// merges them at finalize. record() on a buffer is lock-free with respect to
/// other buffers; one buffer must not be shared between threads.
class MetricsRecorder {
 public:
  explicit MetricsRecorder(std::vector<std::string> sink_names);

  class Buffer {
   public:
    /// Retains the sample; samples with egress < ingress are rejected and
    /// counted, not stored.
    void record(const LatencySample& s);

   private:
    friend class MetricsRecorder;
    std::vector<LatencySample> samples_;
    std::uint64_t invalid_ = 0;
  };

  std::shared_ptr<Buffer> make_buffer();

  /// Samples CPU utilization once per interval until stopped. Process-wide by
  /// default; host=true reads whole-host counters from /proc/stat.
  void start_cpu_sampler(double interval_s = 1.0, bool host = false);
  void stop_cpu_sampler();

  /// Merges buffers, deduplicates ids (first wins, duplicates counted),
  /// computes SLA accounting and per-bucket statistics. Latency is attributed
  /// to the ingress bucket; nearest-rank percentiles.
  RunReport finalize(double sla_ms, double bucket_s, const RunMeta& meta);

 private:
  std::vector<std::string> sink_names_;
  std::mutex mu_;
  std::vector<std::shared_ptr<Buffer>> buffers_;
  std::thread sampler_;
  std::atomic<bool> sampler_stop_{false};
  std::vector<CpuSample> cpu_;
  bool cpu_available_ = false;
};

/// Nearest-rank percentile over a sorted ascending vector.
double percentile_nearest_rank(const std::vector<double>& sorted_vals, double pct);

/// Writes summary.txt, latency_samples.csv, buckets.csv and cpu.csv into dir.
void export_report(const RunReport& report, const std::string& dir);

}  // namespace fastbench
