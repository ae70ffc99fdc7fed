#include "fastbench/common.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

namespace fastbench {

double Rng::exponential(double mean) {
  // Inverse CDF on a (0,1] uniform so log() never sees zero.
  double u = 1.0 - next_double();
  return -mean * std::log(u);
}

void Fnv1a::update(const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h_ ^= p[i];
    h_ *= 0x100000001b3ull;
  }
}

void Fnv1a::update_u64(std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  update(buf, 8);
}

void Fnv1a::update_double(double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  update_u64(bits);
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace fastbench
