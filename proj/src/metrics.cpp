#include "fastbench/metrics.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fastbench/common.hpp"
#include "fastbench/synthetic_work.hpp"

namespace fastbench {

namespace {

// Whole-host busy fraction from the aggregate cpu line of /proc/stat.
bool read_host_cpu(double& busy, double& total) {
  std::ifstream f("/proc/stat");
  std::string cpu;
  if (!(f >> cpu) || cpu != "cpu") return false;
  double v, sum = 0.0, idle = 0.0;
  int field = 0;
  while (f >> v) {
    sum += v;
    if (field == 3 || field == 4) idle += v;  // idle + iowait
    ++field;
    if (field >= 10) break;
  }
  busy = sum - idle;
  total = sum;
  return field >= 4;
}

}  // namespace

double percentile_nearest_rank(const std::vector<double>& sorted_vals, double pct) {
  if (sorted_vals.empty()) return 0.0;
  std::size_t n = sorted_vals.size();
  auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * static_cast<double>(n)));
  if (rank == 0) rank = 1;
  if (rank > n) rank = n;
  return sorted_vals[rank - 1];
}

MetricsRecorder::MetricsRecorder(std::vector<std::string> sink_names)
    : sink_names_(std::move(sink_names)) {}

void MetricsRecorder::Buffer::record(const LatencySample& s) {
  if (s.egress_ms < s.ingress_ms) {
    ++invalid_;
    return;
  }
  samples_.push_back(s);
}

std::shared_ptr<MetricsRecorder::Buffer> MetricsRecorder::make_buffer() {
  auto buf = std::make_shared<Buffer>();
  std::lock_guard<std::mutex> lk(mu_);
  buffers_.push_back(buf);
  return buf;
}

void MetricsRecorder::start_cpu_sampler(double interval_s, bool host) {
  sampler_stop_.store(false);
  sampler_ = std::thread([this, interval_s, host] {
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    const long ncores = sysconf(_SC_NPROCESSORS_ONLN);
    double prev_busy = 0.0, prev_total = 0.0;
    double prev_proc = process_cpu_ms();
    auto prev_wall = start;
    if (host && !read_host_cpu(prev_busy, prev_total)) return;  // cpu: unavailable
    cpu_available_ = true;
    int tick = 0;
    while (!sampler_stop_.load()) {
      ++tick;
      const auto next = start + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(interval_s * tick));
      while (Clock::now() < next && !sampler_stop_.load())
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
      if (sampler_stop_.load()) break;
      double util = 0.0;
      if (host) {
        double busy, total;
        if (!read_host_cpu(busy, total)) continue;
        if (total > prev_total) util = (busy - prev_busy) / (total - prev_total) * 100.0;
        prev_busy = busy;
        prev_total = total;
      } else {
        const auto wall = Clock::now();
        const double proc = process_cpu_ms();
        const double wall_ms = std::chrono::duration<double, std::milli>(wall - prev_wall).count();
        if (wall_ms > 0.0)
          util = (proc - prev_proc) / (wall_ms * static_cast<double>(ncores)) * 100.0;
        prev_proc = proc;
        prev_wall = wall;
      }
      util = std::clamp(util, 0.0, 100.0);
      CpuSample s;
      s.t_s = std::chrono::duration<double>(Clock::now() - start).count();
      s.util_pct = util;
      cpu_.push_back(s);
    }
  });
}

void MetricsRecorder::stop_cpu_sampler() {
  if (!sampler_.joinable()) return;
  sampler_stop_.store(true);
  sampler_.join();
}

RunReport MetricsRecorder::finalize(double sla_ms, double bucket_s, const RunMeta& meta) {
  stop_cpu_sampler();
  RunReport r;
  r.sink_names = sink_names_;
  r.sink_counts.assign(sink_names_.size(), 0);
  r.sla_ms = sla_ms;
  r.bucket_s = bucket_s;
  r.meta = meta;
  r.cpu = cpu_;
  r.cpu_available = cpu_available_;

  {
    std::lock_guard<std::mutex> lk(mu_);
    for (const auto& b : buffers_) {
      r.invalid_rejected += b->invalid_;
      r.samples.insert(r.samples.end(), b->samples_.begin(), b->samples_.end());
    }
  }
  // Quantize timestamps to the exported precision (1 us) so every derived
  // count is reproducible by recounting the CSV.
  for (auto& s : r.samples) {
    s.ingress_ms = std::round(s.ingress_ms * 1000.0) / 1000.0;
    s.egress_ms = std::round(s.egress_ms * 1000.0) / 1000.0;
  }
  std::sort(r.samples.begin(), r.samples.end(),
            [](const LatencySample& a, const LatencySample& b) { return a.event_id < b.event_id; });
  // Duplicate ids: keep the first, count the rest.
  std::size_t w = 0;
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    if (w > 0 && r.samples[i].event_id == r.samples[w - 1].event_id) {
      ++r.duplicates_rejected;
      continue;
    }
    r.samples[w++] = r.samples[i];
  }
  r.samples.resize(w);
  r.total = r.samples.size();

  double max_egress_s = 0.0;
  for (const auto& s : r.samples) {
    if (s.egress_ms - s.ingress_ms > sla_ms) ++r.violations;
    if (s.sink >= 0 && static_cast<std::size_t>(s.sink) < r.sink_counts.size())
      ++r.sink_counts[s.sink];
    max_egress_s = std::max(max_egress_s, s.egress_ms / 1000.0);
  }
  r.violation_fraction =
      r.total == 0 ? 0.0 : static_cast<double>(r.violations) / static_cast<double>(r.total);

  if (bucket_s > 0.0) {
    const int nbuckets =
        r.samples.empty() ? 0 : static_cast<int>(std::floor(max_egress_s / bucket_s)) + 1;
    std::vector<std::vector<double>> lat(nbuckets);
    r.buckets.resize(nbuckets);
    for (int i = 0; i < nbuckets; ++i) {
      r.buckets[i].bucket = i;
      r.buckets[i].start_s = bucket_s * i;
    }
    for (const auto& s : r.samples) {
      const int ib = std::min(nbuckets - 1,
                              static_cast<int>(std::floor(s.ingress_ms / 1000.0 / bucket_s)));
      const int ob = std::min(nbuckets - 1,
                              static_cast<int>(std::floor(s.egress_ms / 1000.0 / bucket_s)));
      r.buckets[ib].in_count += 1;
      r.buckets[ob].out_count += 1;
      const double l = s.egress_ms - s.ingress_ms;
      lat[ib].push_back(l);
      if (l > sla_ms) r.buckets[ib].violations += 1;
    }
    for (int i = 0; i < nbuckets; ++i) {
      auto& v = lat[i];
      if (v.empty()) continue;
      std::sort(v.begin(), v.end());
      r.buckets[i].min_ms = v.front();
      r.buckets[i].max_ms = v.back();
      r.buckets[i].median_ms = percentile_nearest_rank(v, 50.0);
      r.buckets[i].p95_ms = percentile_nearest_rank(v, 95.0);
    }
  }
  return r;
}

void export_report(const RunReport& r, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw std::runtime_error("cannot create report dir: " + dir);

  char buf[256];
  {
    std::ofstream f(fs::path(dir) / "latency_samples.csv", std::ios::binary);
    f << "event_id,ingress_ms,egress_ms,sink\n";
    for (const auto& s : r.samples) {
      int n = std::snprintf(buf, sizeof(buf), "%llu,%.3f,%.3f,%s\n",
                            static_cast<unsigned long long>(s.event_id), s.ingress_ms,
                            s.egress_ms, r.sink_names[s.sink].c_str());
      f.write(buf, n);
    }
    if (!f) throw std::runtime_error("short write: latency_samples.csv");
  }
  {
    std::ofstream f(fs::path(dir) / "buckets.csv", std::ios::binary);
    f << "bucket,start_s,in_count,out_count,min_ms,median_ms,p95_ms,max_ms,violations\n";
    for (const auto& b : r.buckets) {
      int n = std::snprintf(buf, sizeof(buf), "%d,%.3f,%llu,%llu,%.3f,%.3f,%.3f,%.3f,%llu\n",
                            b.bucket, b.start_s, static_cast<unsigned long long>(b.in_count),
                            static_cast<unsigned long long>(b.out_count), b.min_ms, b.median_ms,
                            b.p95_ms, b.max_ms, static_cast<unsigned long long>(b.violations));
      f.write(buf, n);
    }
  }
  {
    std::ofstream f(fs::path(dir) / "cpu.csv", std::ios::binary);
    f << "t_s,util_pct\n";
    for (const auto& c : r.cpu) {
      int n = std::snprintf(buf, sizeof(buf), "%.3f,%.3f\n", c.t_s, c.util_pct);
      f.write(buf, n);
    }
  }
  {
    std::ofstream f(fs::path(dir) / "summary.txt", std::ios::binary);
    f << "workload: " << r.meta.workload << "\n";
    f << "workload_digest: " << r.meta.workload_digest << "\n";
    f << "seed: " << r.meta.seed << "\n";
    f << "routing: " << r.meta.routing << "\n";
    std::snprintf(buf, sizeof(buf), "%.6g", r.meta.time_scale);
    f << "time_scale: " << buf << "\n";
    f << "sim: " << (r.meta.sim ? "true" : "false") << "\n";
    f << "parallelism_total: " << r.meta.parallelism_total << "\n";
    std::snprintf(buf, sizeof(buf), "%.3f", r.sla_ms);
    f << "sla_ms: " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.3f", r.bucket_s);
    f << "bucket_s: " << buf << "\n";
    f << "total_events: " << r.total << "\n";
    f << "violations: " << r.violations << "\n";
    std::snprintf(buf, sizeof(buf), "%.2f%%", r.violation_fraction * 100.0);
    f << "violation_fraction: " << buf << "\n";
    for (std::size_t i = 0; i < r.sink_names.size(); ++i)
      f << "sink_count." << r.sink_names[i] << ": " << r.sink_counts[i] << "\n";
    if (r.duplicates_rejected) f << "duplicates_rejected: " << r.duplicates_rejected << "\n";
    if (r.invalid_rejected) f << "invalid_rejected: " << r.invalid_rejected << "\n";
    f << "cpu: " << (r.cpu_available ? "sampled" : "unavailable") << "\n";
    if (r.total == 0) f << "note: empty run, no samples\n";
  }
}

}  // namespace fastbench
