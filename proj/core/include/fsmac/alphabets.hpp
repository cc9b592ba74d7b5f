#pragma once

#include <cstddef>
#include <cstdint>

namespace fsmac {

inline constexpr std::uint64_t kDefaultEnumerationLimit = 4096;

inline constexpr double kUserTolerance = 1e-9;      // slack accepted on loaded/user data
inline constexpr double kInternalTolerance = 1e-12; // invariant maintained after construction

// Alphabet sizes. nSr == 0 means the receiver-side observation alphabet is
// absent (complete receiver knowledge models).
struct Alphabets {
  std::size_t nS = 1;
  std::size_t nSa = 1;
  std::size_t nSb = 1;
  std::size_t nXa = 1;
  std::size_t nXb = 1;
  std::size_t nY = 1;
  std::size_t nSr = 0;

  bool operator==(const Alphabets&) const = default;
};

// Throws on zero sizes and when an encoder map space nX^nCsi overflows the
// enumeration limit.
void validate_alphabets(const Alphabets& a, std::uint64_t enumerationLimit = kDefaultEnumerationLimit);

}  // namespace fsmac
