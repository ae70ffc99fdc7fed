#include "fastbench/trace.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fastbench {

std::uint64_t Trace::content_digest() const {
  Fnv1a h;
  for (const auto& r : records) {
    h.update_u64(r.id);
    h.update_u64(static_cast<std::uint64_t>(r.offset_ms));
    h.update_u64(r.size_bytes);
  }
  return h.digest();
}

Trace generate(const RateProfile& profile, const SizeHistogram& hist, std::uint64_t seed,
               Arrivals arrivals) {
  profile.validate();
  hist.validate();
  Trace trace;
  trace.meta.seed = seed;
  trace.meta.profile_digest = profile.digest();
  trace.meta.histogram_digest = hist.digest();

  trace.records.reserve(static_cast<std::size_t>(expected_total(profile) * 1.01) + 16);
  Rng rng(seed);
  double bucket_start_ms = 0.0;
  std::uint64_t id = 0;
  std::int64_t prev_offset = 0;
  for (const auto& b : profile.buckets) {
    const double duration_ms = b.duration_s * 1000.0;
    const auto count = static_cast<std::uint64_t>(std::llround(b.duration_s * b.rate_per_s));
    if (count > 0) {
      std::vector<double> at(count);
      if (arrivals == Arrivals::even) {
        const double gap = duration_ms / static_cast<double>(count);
        for (std::uint64_t i = 0; i < count; ++i) at[i] = static_cast<double>(i) * gap;
      } else {
        // Exponential gaps renormalized so the count and span stay exact.
        double cum = 0.0;
        for (std::uint64_t i = 0; i < count; ++i) {
          at[i] = cum;
          cum += rng.exponential(1.0);
        }
        // cum now includes one trailing gap; scale arrivals into [0, span).
        const double scale = cum > 0.0 ? duration_ms / cum : 0.0;
        for (auto& t : at) t *= scale;
      }
      for (std::uint64_t i = 0; i < count; ++i) {
        EventRecord r;
        r.id = id++;
        r.offset_ms = static_cast<std::int64_t>(std::llround(bucket_start_ms + at[i]));
        if (r.offset_ms < prev_offset) r.offset_ms = prev_offset;  // rounding guard
        prev_offset = r.offset_ms;
        r.size_bytes = sample_size(hist, rng);
        trace.records.push_back(r);
      }
    }
    bucket_start_ms += duration_ms;
  }
  return trace;
}

void write_trace(const Trace& trace, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open trace file for writing: " + path);
  f << "# seed=" << trace.meta.seed << "\n";
  f << "# profile_digest=" << hex64(trace.meta.profile_digest) << "\n";
  f << "# histogram_digest=" << hex64(trace.meta.histogram_digest) << "\n";
  f << "# generator_version=" << trace.meta.generator_version << "\n";
  f << "id,offset_ms,size_bytes\n";
  char buf[96];
  for (const auto& r : trace.records) {
    int n = std::snprintf(buf, sizeof(buf), "%llu,%lld,%llu\n",
                          static_cast<unsigned long long>(r.id),
                          static_cast<long long>(r.offset_ms),
                          static_cast<unsigned long long>(r.size_bytes));
    f.write(buf, n);
  }
  if (!f) throw std::runtime_error("short write to trace file: " + path);
}

namespace {

bool parse_meta_line(const std::string& line, TraceMeta& meta) {
  auto eq = line.find('=');
  if (eq == std::string::npos) return false;
  std::string key = line.substr(2, eq - 2);
  std::string val = line.substr(eq + 1);
  if (key == "seed") meta.seed = std::stoull(val);
  else if (key == "profile_digest") meta.profile_digest = std::stoull(val, nullptr, 16);
  else if (key == "histogram_digest") meta.histogram_digest = std::stoull(val, nullptr, 16);
  else if (key == "generator_version") meta.generator_version = std::stoi(val);
  else return false;
  return true;
}

}  // namespace

Trace read_trace(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open trace file: " + path);
  Trace trace;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  std::uint64_t expect_id = 0;
  std::int64_t prev_offset = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (!parse_meta_line(line, trace.meta))
        throw ParseError(path + ":" + std::to_string(lineno) + ": unknown metadata line");
      continue;
    }
    if (!header_seen) {
      if (line != "id,offset_ms,size_bytes")
        throw ParseError(path + ":" + std::to_string(lineno) + ": bad header '" + line + "'");
      header_seen = true;
      continue;
    }
    EventRecord r;
    const char* p = line.data();
    const char* end = p + line.size();
    auto field = [&](auto& out) {
      auto res = std::from_chars(p, end, out);
      if (res.ec != std::errc())
        throw ParseError(path + ":" + std::to_string(lineno) + ": malformed field");
      p = res.ptr;
    };
    field(r.id);
    if (p == end || *p++ != ',')
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected 3 fields");
    field(r.offset_ms);
    if (p == end || *p++ != ',')
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected 3 fields");
    field(r.size_bytes);
    if (p != end)
      throw ParseError(path + ":" + std::to_string(lineno) + ": trailing characters");
    if (r.id != expect_id)
      throw ParseError(path + ":" + std::to_string(lineno) + ": ids not dense (expected " +
                       std::to_string(expect_id) + ", got " + std::to_string(r.id) + ")");
    if (r.offset_ms < prev_offset)
      throw ParseError(path + ":" + std::to_string(lineno) + ": offsets decrease");
    if (r.size_bytes == 0)
      throw ParseError(path + ":" + std::to_string(lineno) + ": zero size");
    ++expect_id;
    prev_offset = r.offset_ms;
    trace.records.push_back(r);
  }
  if (!header_seen) throw ParseError(path + ": missing header line");
  return trace;
}

std::vector<std::uint8_t> materialize_payload(const EventRecord& ev) {
  std::vector<std::uint8_t> buf(ev.size_bytes);
  // xorshift keyed by id; cheap and reproducible, content realism is a non-goal.
  std::uint64_t x = ev.id * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    buf[i] = static_cast<std::uint8_t>(x);
  }
  return buf;
}

}  // namespace fastbench
