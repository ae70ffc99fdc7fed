#include "fastbench/distributions.hpp"

#include <cmath>
#include <stdexcept>

namespace fastbench {

namespace {
constexpr double kProbTolerance = 1e-9;
}

void SizeHistogram::validate() const {
  if (bins.empty()) throw ValidationError("size histogram: no bins");
  double sum = 0.0;
  std::uint64_t prev_hi = 0;
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const auto& b = bins[i];
    if (b.lo >= b.hi)
      throw ValidationError("size histogram: bin " + std::to_string(i) + " has lo >= hi");
    if (i > 0 && b.lo < prev_hi)
      throw ValidationError("size histogram: bin " + std::to_string(i) +
                            " overlaps or is out of order");
    if (b.prob < 0.0 || b.prob > 1.0)
      throw ValidationError("size histogram: bin " + std::to_string(i) +
                            " probability out of [0,1]");
    sum += b.prob;
    prev_hi = b.hi;
  }
  if (std::abs(sum - 1.0) > kProbTolerance)
    throw ValidationError("size histogram: probabilities sum to " + std::to_string(sum) +
                          ", expected 1");
}

std::uint64_t SizeHistogram::digest() const {
  Fnv1a h;
  for (const auto& b : bins) {
    h.update_u64(b.lo);
    h.update_u64(b.hi);
    h.update_double(b.prob);
  }
  return h.digest();
}

double RateProfile::total_span_s() const {
  double span = 0.0;
  for (const auto& b : buckets) span += b.duration_s;
  return span;
}

void RateProfile::validate() const {
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    if (buckets[i].duration_s <= 0.0)
      throw ValidationError("rate profile: bucket " + std::to_string(i) +
                            " has non-positive duration");
    if (buckets[i].rate_per_s < 0.0)
      throw ValidationError("rate profile: bucket " + std::to_string(i) + " has negative rate");
  }
}

std::uint64_t RateProfile::digest() const {
  Fnv1a h;
  for (const auto& b : buckets) {
    h.update_double(b.duration_s);
    h.update_double(b.rate_per_s);
  }
  return h.digest();
}

std::uint64_t sample_size(const SizeHistogram& hist, Rng& rng) {
  hist.validate();
  double u = rng.next_double();
  double cum = 0.0;
  std::size_t chosen = hist.bins.size() - 1;
  for (std::size_t i = 0; i < hist.bins.size(); ++i) {
    cum += hist.bins[i].prob;
    if (u < cum) {
      chosen = i;
      break;
    }
  }
  const auto& b = hist.bins[chosen];
  return rng.uniform_u64(b.lo, b.hi);
}

double expected_total(const RateProfile& profile) {
  double total = 0.0;
  for (const auto& b : profile.buckets) total += b.duration_s * b.rate_per_s;
  return total;
}

double instantaneous_rate(const RateProfile& profile, double t_s) {
  if (t_s < 0.0) throw std::out_of_range("instantaneous_rate: t < 0");
  double start = 0.0;
  for (const auto& b : profile.buckets) {
    if (t_s < start + b.duration_s) return b.rate_per_s;
    start += b.duration_s;
  }
  throw std::out_of_range("instantaneous_rate: t beyond profile span");
}

RateProfile compress_time(const RateProfile& profile, double factor) {
  if (factor <= 0.0) throw ValidationError("compress_time: factor must be positive");
  RateProfile out = profile;
  for (auto& b : out.buckets) b.duration_s /= factor;
  return out;
}

RateProfile scale_rate(const RateProfile& profile, double factor) {
  if (factor <= 0.0) throw ValidationError("scale_rate: factor must be positive");
  RateProfile out = profile;
  for (auto& b : out.buckets) b.rate_per_s *= factor;
  return out;
}

RateProfile clip_profile(const RateProfile& profile, double span_s) {
  if (span_s < 0.0) throw ValidationError("clip_profile: span must be non-negative");
  RateProfile out;
  double remaining = span_s;
  for (const auto& b : profile.buckets) {
    if (remaining <= 0.0) break;
    RateBucket nb = b;
    if (nb.duration_s > remaining) nb.duration_s = remaining;
    out.buckets.push_back(nb);
    remaining -= nb.duration_s;
  }
  return out;
}

}  // namespace fastbench
