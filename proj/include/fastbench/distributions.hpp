#pragma once

#include <cstdint>
#include <vector>

#include "fastbench/common.hpp"

namespace fastbench {

/// One payload-size bin: [lo, hi) bytes with probability mass `prob`.
struct SizeBin {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  double prob = 0.0;
};

/// Probability distribution over event payload sizes.
/// Bins must be non-overlapping, ascending, with probabilities summing to 1
/// (within 1e-9). A single bin [s, s+1) models a constant size.
struct SizeHistogram {
  std::vector<SizeBin> bins;

  /// Throws ValidationError on any invariant breach. Never renormalizes.
  void validate() const;

  std::uint64_t digest() const;
};

/// One arrival-rate bucket: `duration_s` seconds at `rate_per_s` events/sec.
struct RateBucket {
  double duration_s = 0.0;
  double rate_per_s = 0.0;
};

/// Piecewise-constant arrival rate over time.
struct RateProfile {
  std::vector<RateBucket> buckets;

  double total_span_s() const;
  void validate() const;
  std::uint64_t digest() const;
};

/// Draws a payload size: bin by configured probability, uniform within bin.
std::uint64_t sample_size(const SizeHistogram& hist, Rng& rng);

/// Sum of duration * rate over all buckets.
double expected_total(const RateProfile& profile);

/// Rate of the bucket containing time t. Throws std::out_of_range when t is
/// outside [0, total span).
double instantaneous_rate(const RateProfile& profile, double t_s);

/// Divides every bucket duration by `factor`; rates unchanged.
RateProfile compress_time(const RateProfile& profile, double factor);

/// Multiplies every bucket rate by `factor`; durations unchanged.
RateProfile scale_rate(const RateProfile& profile, double factor);

/// Truncates the profile to the first `span_s` seconds (partial last bucket
/// kept with reduced duration). span_s >= total span returns a copy.
RateProfile clip_profile(const RateProfile& profile, double span_s);

}  // namespace fastbench
