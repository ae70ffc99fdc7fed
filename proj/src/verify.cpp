#include "fastbench/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "fastbench/common.hpp"
#include "fastbench/metrics.hpp"

namespace fastbench {

namespace {

namespace fs = std::filesystem;

struct RawSample {
  std::uint64_t id;
  double ingress_ms;
  double egress_ms;
  std::string sink;
};

std::map<std::string, std::string> read_summary(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(f, line)) {
    auto colon = line.find(": ");
    if (colon == std::string::npos) continue;
    kv[line.substr(0, colon)] = line.substr(colon + 2);
  }
  return kv;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

VerifyResult verify_report(const std::string& dir) {
  VerifyResult res;
  auto mismatch = [&res](const std::string& msg) {
    res.ok = false;
    res.mismatches.push_back(msg);
  };

  auto kv = read_summary((fs::path(dir) / "summary.txt").string());
  const double sla_ms = std::stod(kv.at("sla_ms"));
  const double bucket_s = std::stod(kv.at("bucket_s"));
  const auto claimed_total = std::stoull(kv.at("total_events"));
  const auto claimed_violations = std::stoull(kv.at("violations"));

  // Raw samples.
  std::vector<RawSample> samples;
  {
    std::ifstream f(fs::path(dir) / "latency_samples.csv");
    if (!f) throw ParseError("cannot open latency_samples.csv in " + dir);
    std::string line;
    std::getline(f, line);
    if (line != "event_id,ingress_ms,egress_ms,sink")
      throw ParseError("latency_samples.csv: bad header");
    std::size_t lineno = 1;
    while (std::getline(f, line)) {
      ++lineno;
      if (line.empty()) continue;
      auto fields = split_csv(line);
      if (fields.size() != 4)
        throw ParseError("latency_samples.csv:" + std::to_string(lineno) + ": expected 4 fields");
      RawSample s;
      s.id = std::stoull(fields[0]);
      s.ingress_ms = std::stod(fields[1]);
      s.egress_ms = std::stod(fields[2]);
      s.sink = fields[3];
      samples.push_back(s);
    }
  }

  // Totals, violations, sink counts.
  std::uint64_t violations = 0;
  std::map<std::string, std::uint64_t> sink_counts;
  for (const auto& s : samples) {
    if (s.egress_ms - s.ingress_ms > sla_ms) ++violations;
    sink_counts[s.sink] += 1;
  }
  if (samples.size() != claimed_total)
    mismatch("total_events: summary says " + kv.at("total_events") + ", recount " +
             std::to_string(samples.size()));
  if (violations != claimed_violations)
    mismatch("violations: summary says " + kv.at("violations") + ", recount " +
             std::to_string(violations));
  {
    char buf[32];
    const double frac =
        samples.empty() ? 0.0
                        : static_cast<double>(violations) / static_cast<double>(samples.size());
    std::snprintf(buf, sizeof(buf), "%.2f%%", frac * 100.0);
    if (kv.count("violation_fraction") && kv.at("violation_fraction") != buf)
      mismatch("violation_fraction: summary says " + kv.at("violation_fraction") +
               ", recount " + buf);
  }
  for (const auto& [k, v] : kv) {
    if (k.rfind("sink_count.", 0) != 0) continue;
    const std::string sink = k.substr(11);
    const auto claimed = std::stoull(v);
    if (sink_counts[sink] != claimed)
      mismatch("sink_count." + sink + ": summary says " + v + ", recount " +
               std::to_string(sink_counts[sink]));
  }

  // Bucket file recount.
  std::ifstream f(fs::path(dir) / "buckets.csv");
  if (!f) throw ParseError("cannot open buckets.csv in " + dir);
  std::string line;
  std::getline(f, line);
  if (line != "bucket,start_s,in_count,out_count,min_ms,median_ms,p95_ms,max_ms,violations")
    throw ParseError("buckets.csv: bad header");

  // Recompute per-bucket aggregates from the raw samples.
  int nbuckets = 0;
  if (!samples.empty() && bucket_s > 0.0) {
    double max_egress_s = 0.0;
    for (const auto& s : samples) max_egress_s = std::max(max_egress_s, s.egress_ms / 1000.0);
    nbuckets = static_cast<int>(std::floor(max_egress_s / bucket_s)) + 1;
  }
  std::vector<std::uint64_t> in_count(nbuckets, 0), out_count(nbuckets, 0),
      bviol(nbuckets, 0);
  std::vector<std::vector<double>> lat(nbuckets);
  for (const auto& s : samples) {
    int ib = std::min(nbuckets - 1, static_cast<int>(std::floor(s.ingress_ms / 1000.0 / bucket_s)));
    int ob = std::min(nbuckets - 1, static_cast<int>(std::floor(s.egress_ms / 1000.0 / bucket_s)));
    in_count[ib] += 1;
    out_count[ob] += 1;
    const double l = s.egress_ms - s.ingress_ms;
    lat[ib].push_back(l);
    if (l > sla_ms) bviol[ib] += 1;
  }

  int rows = 0;
  std::size_t lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != 9)
      throw ParseError("buckets.csv:" + std::to_string(lineno) + ": expected 9 fields");
    const int b = std::stoi(fields[0]);
    if (b < 0 || b >= nbuckets) {
      if (!(nbuckets == 0 && fields[2] == "0")) mismatch("buckets.csv: unexpected bucket row " + fields[0]);
      ++rows;
      continue;
    }
    auto check_count = [&](const char* what, const std::string& got, std::uint64_t want) {
      if (std::stoull(got) != want)
        mismatch("bucket " + std::to_string(b) + " " + what + ": file says " + got +
                 ", recount " + std::to_string(want));
    };
    check_count("in_count", fields[2], in_count[b]);
    check_count("out_count", fields[3], out_count[b]);
    check_count("violations", fields[8], bviol[b]);
    auto& v = lat[b];
    std::sort(v.begin(), v.end());
    auto check_ms = [&](const char* what, const std::string& got, double want) {
      if (std::abs(std::stod(got) - want) > 5e-4)
        mismatch("bucket " + std::to_string(b) + " " + what + ": file says " + got +
                 ", recount " + std::to_string(want));
    };
    if (!v.empty()) {
      check_ms("min_ms", fields[4], v.front());
      check_ms("median_ms", fields[5], percentile_nearest_rank(v, 50.0));
      check_ms("p95_ms", fields[6], percentile_nearest_rank(v, 95.0));
      check_ms("max_ms", fields[7], v.back());
    }
    ++rows;
  }
  if (rows != nbuckets)
    mismatch("buckets.csv: row count " + std::to_string(rows) + ", expected " +
             std::to_string(nbuckets));

  // Conservation over the whole run: per-bucket (in - out) nets to zero.
  std::uint64_t tin = 0, tout = 0;
  for (int i = 0; i < nbuckets; ++i) {
    tin += in_count[i];
    tout += out_count[i];
  }
  if (tin != tout) mismatch("conservation: total in " + std::to_string(tin) + " != total out " +
                            std::to_string(tout));
  return res;
}

}  // namespace fastbench
