#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "fsmac/errors.hpp"

// Counter-based generator: every output is mix64(key + (counter+1)*GAMMA) where
// mix64 is the SplitMix64 finalizer.  Substream keys are derived from
// (seed, streamA, streamB) so that any (trial, role) pair owns an independent
// stream that can be regenerated without replaying earlier draws.

namespace fsmac::rng {

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t substream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t k = mix64(seed + kGamma);
  k = mix64(k + (a + 1) * kGamma);
  k = mix64(k + (b + 1) * kGamma);
  return k;
}

class Stream {
 public:
  explicit Stream(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0)
      : key_(substream_key(seed, a, b)) {}

  std::uint64_t next() { return mix64(key_ + (++counter_) * kGamma); }

  // [0, 1), 53-bit resolution
  double nextDouble() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // unbiased integer in [0, m) by rejection
  std::uint64_t nextBelow(std::uint64_t m) {
    if (m == 0) fail(Errc::IndexOutOfRange, "nextBelow(0)");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % m;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % m;
  }

  // inverse-CDF draw from a probability vector (assumed normalized)
  std::size_t nextIndex(std::span<const double> pmf) {
    double u = nextDouble();
    double acc = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      acc += pmf[i];
      if (u < acc) return i;
    }
    for (std::size_t i = pmf.size(); i-- > 0;) {
      if (pmf[i] > 0.0) return i;
    }
    return pmf.size() - 1;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Flat Dirichlet draw via normalized exponentials; full support almost surely.
inline std::vector<double> dirichlet(Stream& stream, std::size_t k) {
  std::vector<double> v(k);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double u = stream.nextDouble();
    // map away from exactly 0 so the log below is finite
    double e = -std::log((1.0 - u) + 1e-300);
    v[i] = e;
    total += e;
  }
  for (double& x : v) x /= total;
  return v;
}

}  // namespace fsmac::rng
