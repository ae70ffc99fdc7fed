#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fastbench/distributions.hpp"

namespace fastbench {

/// One pre-generated event: dense id, relative timestamp, payload size.
struct EventRecord {
  std::uint64_t id = 0;
  std::int64_t offset_ms = 0;
  std::uint64_t size_bytes = 0;

  bool operator==(const EventRecord&) const = default;
};

struct TraceMeta {
  std::uint64_t seed = 0;
  std::uint64_t profile_digest = 0;
  std::uint64_t histogram_digest = 0;
  int generator_version = 1;

  bool operator==(const TraceMeta&) const = default;
};

struct Trace {
  std::vector<EventRecord> records;
  TraceMeta meta;

  std::uint64_t content_digest() const;
  bool operator==(const Trace&) const = default;
};

/// Within-bucket inter-arrival shape. `even` is deterministic even spacing;
/// `poisson` draws seeded exponential gaps renormalized to the bucket span,
/// for burstiness studies.
enum class Arrivals { even, poisson };

/// Pre-generates a timestamped, sized event trace. Per bucket the event count
/// is round(duration * rate); sizes are drawn from the histogram.
/// Deterministic for a given seed.
Trace generate(const RateProfile& profile, const SizeHistogram& hist, std::uint64_t seed,
               Arrivals arrivals = Arrivals::even);

/// CSV with '#'-prefixed metadata lines, header `id,offset_ms,size_bytes`,
/// integer-only fields so files are byte-comparable.
void write_trace(const Trace& trace, const std::string& path);

/// Round-trip inverse of write_trace. Malformed lines raise ParseError naming
/// the line number.
Trace read_trace(const std::string& path);

/// Materializes a pseudo-random payload for an event; the trace stores only
/// sizes, payload bytes are derived from (id, size) at emit time.
std::vector<std::uint8_t> materialize_payload(const EventRecord& ev);

}  // namespace fastbench
