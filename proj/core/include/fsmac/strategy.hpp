#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fsmac/alphabets.hpp"

namespace fsmac {

// A deterministic encoder map from an observation symbol to an input symbol,
// packed as an integer: the output for observation c is the c-th little-endian
// base-nX digit of index (observation 0 = least significant digit).
struct ShannonStrategy {
  std::uint64_t index = 0;
  std::size_t nCsi = 1;
  std::size_t nX = 1;

  std::size_t apply(std::size_t csi) const;
};

// nX^nCsi with overflow and limit checks.
std::uint64_t strategy_count(std::size_t nX, std::size_t nCsi,
                             std::uint64_t limit = kDefaultEnumerationLimit);

class StrategySpace {
 public:
  StrategySpace(std::size_t nX, std::size_t nCsi,
                std::uint64_t limit = kDefaultEnumerationLimit);

  std::size_t nX() const { return nX_; }
  std::size_t nCsi() const { return nCsi_; }
  std::uint64_t count() const { return count_; }

  ShannonStrategy at(std::uint64_t index) const;

  // all strategies in ascending index order; the ordering is part of the
  // contract (policy vectors are indexed by it)
  std::vector<ShannonStrategy> enumerate() const;

  // output symbol table, entry [index * nCsi + csi]
  std::vector<std::size_t> outputTable() const;

 private:
  std::size_t nX_;
  std::size_t nCsi_;
  std::uint64_t count_;
};

}  // namespace fsmac
