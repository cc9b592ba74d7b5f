#include "fsmac/strategy.hpp"

#include <limits>
#include <string>

#include "fsmac/errors.hpp"

namespace fsmac {

std::size_t ShannonStrategy::apply(std::size_t csi) const {
  if (csi >= nCsi) fail(Errc::IndexOutOfRange, "observation symbol " + std::to_string(csi));
  std::uint64_t v = index;
  for (std::size_t i = 0; i < csi; ++i) v /= nX;
  return static_cast<std::size_t>(v % nX);
}

std::uint64_t strategy_count(std::size_t nX, std::size_t nCsi, std::uint64_t limit) {
  if (nX == 0 || nCsi == 0) fail(Errc::DimensionMismatch, "empty strategy space");
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < nCsi; ++i) {
    if (count > limit / nX + 1) {
      fail(Errc::EnumerationLimitExceeded,
           std::to_string(nX) + "^" + std::to_string(nCsi) + " exceeds limit " +
               std::to_string(limit));
    }
    if (count > std::numeric_limits<std::uint64_t>::max() / nX) {
      fail(Errc::EnumerationLimitExceeded, "strategy count overflows");
    }
    count *= nX;
  }
  if (count > limit) {
    fail(Errc::EnumerationLimitExceeded,
         std::to_string(count) + " strategies exceed limit " + std::to_string(limit));
  }
  return count;
}

StrategySpace::StrategySpace(std::size_t nX, std::size_t nCsi, std::uint64_t limit)
    : nX_(nX), nCsi_(nCsi), count_(strategy_count(nX, nCsi, limit)) {}

ShannonStrategy StrategySpace::at(std::uint64_t index) const {
  if (index >= count_) {
    fail(Errc::IndexOutOfRange,
         "strategy " + std::to_string(index) + " of " + std::to_string(count_));
  }
  return ShannonStrategy{index, nCsi_, nX_};
}

std::vector<ShannonStrategy> StrategySpace::enumerate() const {
  std::vector<ShannonStrategy> out;
  out.reserve(static_cast<std::size_t>(count_));
  for (std::uint64_t i = 0; i < count_; ++i) out.push_back(ShannonStrategy{i, nCsi_, nX_});
  return out;
}

std::vector<std::size_t> StrategySpace::outputTable() const {
  std::vector<std::size_t> table(static_cast<std::size_t>(count_) * nCsi_);
  for (std::uint64_t i = 0; i < count_; ++i) {
    std::uint64_t v = i;
    for (std::size_t c = 0; c < nCsi_; ++c) {
      table[static_cast<std::size_t>(i) * nCsi_ + c] = static_cast<std::size_t>(v % nX_);
      v /= nX_;
    }
  }
  return table;
}

}  // namespace fsmac
