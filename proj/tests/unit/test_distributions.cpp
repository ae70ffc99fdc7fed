#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "fastbench/distributions.hpp"

using namespace fastbench;

namespace {

SizeHistogram packet_hist() {
  SizeHistogram h;
  h.bins = {{1000000, 2000000, 0.20},
            {2000000, 3000000, 0.50},
            {3000000, 4000000, 0.20},
            {4000000, 5000000, 0.10}};
  return h;
}

}  // namespace

TEST_CASE("histogram validation rejects malformed inputs") {
  SizeHistogram h;
  CHECK_THROWS_AS(h.validate(), ValidationError);  // empty

  h = packet_hist();
  CHECK_NOTHROW(h.validate());

  SUBCASE("lo >= hi") {
    h.bins[1].hi = h.bins[1].lo;
    CHECK_THROWS_AS(h.validate(), ValidationError);
  }
  SUBCASE("overlap") {
    h.bins[1].lo = 1500000;
    CHECK_THROWS_AS(h.validate(), ValidationError);
  }
  SUBCASE("out of order") {
    std::swap(h.bins[0], h.bins[2]);
    CHECK_THROWS_AS(h.validate(), ValidationError);
  }
  SUBCASE("sum != 1 is never renormalized") {
    h.bins[0].prob = 0.25;
    CHECK_THROWS_AS(h.validate(), ValidationError);
  }
  SUBCASE("negative probability") {
    h.bins[0].prob = -0.1;
    h.bins[1].prob = 0.8;
    CHECK_THROWS_AS(h.validate(), ValidationError);
  }
}

TEST_CASE("sample_size matches configured bin frequencies within 1% absolute") {
  const SizeHistogram h = packet_hist();
  Rng rng(42);
  const int n = 100000;
  int counts[4] = {0, 0, 0, 0};
  for (int i = 0; i < n; ++i) {
    const std::uint64_t s = sample_size(h, rng);
    bool placed = false;
    for (int b = 0; b < 4; ++b) {
      if (s >= h.bins[b].lo && s < h.bins[b].hi) {
        ++counts[b];
        placed = true;
      }
    }
    CHECK(placed);  // within-bin bounds respected
  }
  for (int b = 0; b < 4; ++b) {
    const double freq = static_cast<double>(counts[b]) / n;
    CHECK(std::abs(freq - h.bins[b].prob) < 0.01);
  }
}

TEST_CASE("sample_size is deterministic per seed") {
  const SizeHistogram h = packet_hist();
  Rng a(7), b(7), c(8);
  bool any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const auto va = sample_size(h, a);
    CHECK(va == sample_size(h, b));
    if (va != sample_size(h, c)) any_diff = true;
  }
  CHECK(any_diff);
}

TEST_CASE("single-bin histogram models a constant size") {
  SizeHistogram h;
  h.bins = {{4096, 4097, 1.0}};
  Rng rng(1);
  for (int i = 0; i < 50; ++i) CHECK(sample_size(h, rng) == 4096);
}

TEST_CASE("rate profile arithmetic") {
  RateProfile p;
  p.buckets = {{10.0, 2.0}, {5.0, 0.0}, {20.0, 1.5}};
  CHECK_NOTHROW(p.validate());
  CHECK(p.total_span_s() == doctest::Approx(35.0));
  CHECK(expected_total(p) == doctest::Approx(50.0));

  CHECK(instantaneous_rate(p, 0.0) == 2.0);
  CHECK(instantaneous_rate(p, 9.999) == 2.0);
  CHECK(instantaneous_rate(p, 10.0) == 0.0);
  CHECK(instantaneous_rate(p, 34.9) == 1.5);
  CHECK_THROWS_AS(instantaneous_rate(p, 35.0), std::out_of_range);
  CHECK_THROWS_AS(instantaneous_rate(p, -1.0), std::out_of_range);
}

TEST_CASE("rate profile validation") {
  RateProfile p;
  p.buckets = {{0.0, 1.0}};
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p.buckets = {{1.0, -1.0}};
  CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("compress_time shrinks durations only") {
  RateProfile p;
  p.buckets = {{3600.0, 10.0}, {3600.0, 20.0}};
  RateProfile c = compress_time(p, 600.0);
  CHECK(c.buckets[0].duration_s == doctest::Approx(6.0));
  CHECK(c.buckets[0].rate_per_s == 10.0);
  CHECK(c.buckets[1].duration_s == doctest::Approx(6.0));
  CHECK(expected_total(c) == doctest::Approx(expected_total(p) / 600.0));
  CHECK_THROWS_AS(compress_time(p, 0.0), ValidationError);
}

TEST_CASE("scale_rate scales rates only") {
  RateProfile p;
  p.buckets = {{10.0, 3.0}};
  RateProfile s = scale_rate(p, 2.5);
  CHECK(s.buckets[0].duration_s == 10.0);
  CHECK(s.buckets[0].rate_per_s == doctest::Approx(7.5));
  CHECK_THROWS_AS(scale_rate(p, -1.0), ValidationError);
}

TEST_CASE("clip_profile truncates with a partial last bucket") {
  RateProfile p;
  p.buckets = {{10.0, 1.0}, {10.0, 2.0}, {10.0, 3.0}};
  RateProfile c = clip_profile(p, 14.0);
  REQUIRE(c.buckets.size() == 2);
  CHECK(c.buckets[0].duration_s == 10.0);
  CHECK(c.buckets[1].duration_s == doctest::Approx(4.0));
  CHECK(expected_total(c) == doctest::Approx(18.0));

  CHECK(clip_profile(p, 100.0).buckets.size() == 3);
  CHECK(expected_total(clip_profile(p, 100.0)) == doctest::Approx(expected_total(p)));
  CHECK(clip_profile(p, 0.0).buckets.empty());
}

TEST_CASE("digests are order and value sensitive") {
  RateProfile a, b;
  a.buckets = {{10.0, 1.0}, {5.0, 2.0}};
  b.buckets = {{5.0, 2.0}, {10.0, 1.0}};
  CHECK(a.digest() != b.digest());
  CHECK(a.digest() == a.digest());

  SizeHistogram h1 = packet_hist(), h2 = packet_hist();
  CHECK(h1.digest() == h2.digest());
  h2.bins[0].prob = 0.21;
  CHECK(h1.digest() != h2.digest());
}
