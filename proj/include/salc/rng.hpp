#pragma once

#include <cmath>
#include <cstdint>

namespace salc {

// Deterministic xoshiro256++ generator with explicit floating-point
// conversions, so streams reproduce bit-for-bit across compilers and
// standard libraries. Every consumer takes an Rng by reference; streams are
// never shared between threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (int i = 0; i < 4; ++i) s_[i] = splitmix64(x);
  }

  // Stream derivation: mixes (master, stream) through SplitMix64 so that
  // per-trial generators never collide and any single trial can be
  // reproduced in isolation.
  static Rng derive(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t x = master;
    std::uint64_t a = splitmix64(x);
    x = stream ^ 0x9e3779b97f4a7c15ull;
    std::uint64_t b = splitmix64(x);
    return Rng(a ^ (b + 0x632be59bd9b4e019ull));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double next_double_open() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  // Standard normal via Box-Muller. The spare value is cached, which keeps
  // draw counts even but is irrelevant to consumers since each stream is
  // private.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = next_double_open();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace salc
