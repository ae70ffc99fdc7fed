#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace fastbench {

/// Raised when a config, histogram, profile or topology fails validation.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised on malformed files (trace, workload, report).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Deterministic 64-bit random source. The engine stream of mt19937_64 is
/// pinned by the standard; the uniform mappings are hand-rolled here because
/// std::uniform_*_distribution output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform double in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi).
  std::uint64_t uniform_u64(std::uint64_t lo, std::uint64_t hi) {
    return lo + static_cast<std::uint64_t>(next_double() * static_cast<double>(hi - lo));
  }

  /// Exponential with the given mean.
  double exponential(double mean);

 private:
  std::mt19937_64 eng_;
};

/// FNV-1a 64-bit, used for config digests and trace content hashes.
class Fnv1a {
 public:
  void update(const void* data, std::size_t n);
  void update(const std::string& s) { update(s.data(), s.size()); }
  void update_u64(std::uint64_t v);
  void update_double(double v);
  std::uint64_t digest() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ull;
};

std::string hex64(std::uint64_t v);

}  // namespace fastbench
