#include <doctest.h>

#include <cstdint>
#include <vector>

#include "fsmac/errors.hpp"
#include "fsmac/strategy.hpp"
#include "helpers.hpp"

using namespace fsmac;
using testutil::error_code_of;

namespace {

// reference digit extraction: observation c reads the c-th little-endian
// base-nX digit, computed here by repeated division so the packing in the
// library is checked against plain integer arithmetic
std::size_t reference_output(std::uint64_t index, std::size_t nX, std::size_t csi) {
  for (std::size_t i = 0; i < csi; ++i) index /= nX;
  return static_cast<std::size_t>(index % nX);
}

}  // namespace

TEST_CASE("strategy apply matches base-expansion reference") {
  for (const auto [nX, nCsi] : {std::pair<std::size_t, std::size_t>{2, 3},
                                {3, 2},
                                {2, 1},
                                {4, 3},
                                {5, 2}}) {
    const StrategySpace space(nX, nCsi);
    REQUIRE(space.count() > 0);
    for (std::uint64_t i = 0; i < space.count(); ++i) {
      const ShannonStrategy t = space.at(i);
      CHECK(t.index == i);
      for (std::size_t c = 0; c < nCsi; ++c) {
        CHECK(t.apply(c) == reference_output(i, nX, c));
      }
    }
  }
}

TEST_CASE("hand-picked strategy digits") {
  // index 6 in base 2 over three observations is digits (0, 1, 1)
  const ShannonStrategy t{6, 3, 2};
  CHECK(t.apply(0) == 0);
  CHECK(t.apply(1) == 1);
  CHECK(t.apply(2) == 1);
  // index 7 in base 3 over two observations is digits (1, 2)
  const ShannonStrategy u{7, 2, 3};
  CHECK(u.apply(0) == 1);
  CHECK(u.apply(1) == 2);
  CHECK(error_code_of([&] { u.apply(2); }) == Errc::IndexOutOfRange);
}

TEST_CASE("strategy space counting and bounds") {
  CHECK(StrategySpace(2, 3).count() == 8);
  CHECK(StrategySpace(3, 3).count() == 27);
  CHECK(StrategySpace(7, 1).count() == 7);
  CHECK(strategy_count(2, 3, 8) == 8);
  CHECK(error_code_of([] { StrategySpace(2, 4, 15); }) == Errc::EnumerationLimitExceeded);
  CHECK(error_code_of([] { StrategySpace(2, 13); }) == Errc::EnumerationLimitExceeded);
  const StrategySpace space(2, 2);
  CHECK(error_code_of([&] { space.at(4); }) == Errc::IndexOutOfRange);
}

TEST_CASE("enumerate is ascending and complete") {
  const StrategySpace space(3, 2);
  const auto all = space.enumerate();
  REQUIRE(all.size() == 9);
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].index == i);
    CHECK(all[i].nX == 3);
    CHECK(all[i].nCsi == 2);
  }
}

TEST_CASE("output table agrees with apply") {
  for (const auto [nX, nCsi] :
       {std::pair<std::size_t, std::size_t>{2, 3}, {3, 2}, {4, 1}}) {
    const StrategySpace space(nX, nCsi);
    const auto table = space.outputTable();
    REQUIRE(table.size() == space.count() * nCsi);
    for (std::uint64_t i = 0; i < space.count(); ++i) {
      for (std::size_t c = 0; c < nCsi; ++c) {
        CHECK(table[i * nCsi + c] == space.at(i).apply(c));
      }
    }
  }
}
