#pragma once

#include <cstddef>
#include <vector>

#include "fsmac/kernel.hpp"

namespace fsmac {

// Independent per-encoder weights over the deterministic encoder map spaces.
struct TeamPolicy {
  std::vector<double> piA;
  std::vector<double> piB;

  static TeamPolicy validated(std::vector<double> piA, std::vector<double> piB,
                              double tolerance = kUserTolerance);
  static TeamPolicy uniform(std::size_t countA, std::size_t countB);
};

// Joint weights over (input of encoder a, encoder map of b), row-major.
struct CooperativePolicy {
  std::size_t nXa = 0;
  std::size_t nTb = 0;
  std::vector<double> piJoint;

  double operator()(std::size_t xA, std::size_t tB) const { return piJoint[xA * nTb + tB]; }

  static CooperativePolicy validated(std::size_t nXa, std::size_t nTb,
                                     std::vector<double> piJoint,
                                     double tolerance = kUserTolerance);
};

// Input distributions chosen per encoder observation symbol, where each
// encoder observation is a fixed function of the receiver observation sR.
struct ConditionedInputPolicy {
  StochasticKernel piAGivenCsi;  // csiA -> xA
  StochasticKernel piBGivenCsi;  // csiB -> xB
  std::vector<std::size_t> fA;   // sR -> csiA row
  std::vector<std::size_t> fB;   // sR -> csiB row

  static ConditionedInputPolicy validated(StochasticKernel piAGivenCsi,
                                          StochasticKernel piBGivenCsi,
                                          std::vector<std::size_t> fA,
                                          std::vector<std::size_t> fB);
};

}  // namespace fsmac
