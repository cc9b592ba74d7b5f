#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "fsmac/alphabets.hpp"
#include "fsmac/kernel.hpp"

namespace fsmac {

// Memoryless two-sender channel with i.i.d. state, per-encoder noisy causal
// state observations, and a receiver that sees the state exactly.
// channel rows are indexed (xA, xB, s) row-major, columns are y.
struct FsMacChannel {
  Alphabets alphabets;
  std::vector<double> stateDist;  // over s
  StochasticKernel csiA;          // s -> sA
  StochasticKernel csiB;          // s -> sB
  StochasticKernel channel;       // (xA, xB, s) -> y

  std::size_t channelRow(std::size_t xA, std::size_t xB, std::size_t s) const {
    return (xA * alphabets.nXb + xB) * alphabets.nS + s;
  }

  static FsMacChannel validated(Alphabets alphabets, std::vector<double> stateDist,
                                StochasticKernel csiA, StochasticKernel csiB,
                                StochasticKernel channel,
                                std::uint64_t enumerationLimit = kDefaultEnumerationLimit,
                                double tolerance = kUserTolerance);
};

// Receiver sees sR; everything else (state, both encoder observations) is
// conditionally independent given sR.
struct NoisyReceiverModel {
  Alphabets alphabets;            // nSr >= 1
  std::vector<double> srDist;     // over sR
  StochasticKernel stateGivenSr;  // sR -> s
  StochasticKernel csiAGivenSr;   // sR -> sA
  StochasticKernel csiBGivenSr;   // sR -> sB
  StochasticKernel channel;       // (xA, xB, s) -> y

  std::size_t channelRow(std::size_t xA, std::size_t xB, std::size_t s) const {
    return (xA * alphabets.nXb + xB) * alphabets.nS + s;
  }

  static NoisyReceiverModel validated(Alphabets alphabets, std::vector<double> srDist,
                                      StochasticKernel stateGivenSr, StochasticKernel csiAGivenSr,
                                      StochasticKernel csiBGivenSr, StochasticKernel channel,
                                      std::uint64_t enumerationLimit = kDefaultEnumerationLimit,
                                      double tolerance = kUserTolerance);
};

// y = xA + xB + z mod q with the additive noise z drawn conditionally on s.
struct ModuloAdditiveSpec {
  std::size_t q = 2;
  std::vector<double> stateDist;     // over s
  StochasticKernel csiA;             // s -> sA
  StochasticKernel csiB;             // s -> sB
  StochasticKernel noiseGivenState;  // s -> z, z in [0, q)

  static ModuloAdditiveSpec validated(std::size_t q, std::vector<double> stateDist,
                                      StochasticKernel csiA, StochasticKernel csiB,
                                      StochasticKernel noiseGivenState,
                                      std::uint64_t enumerationLimit = kDefaultEnumerationLimit,
                                      double tolerance = kUserTolerance);
};

// y = (xA AND xB) XOR s with s ~ Bernoulli(pS); the receiver observes s
// through a binary symmetric channel with crossover pR.
struct BinaryMultiplierSpec {
  double pS = 0.5;
  double pR = 0.0;

  static BinaryMultiplierSpec validated(double pS, double pR);
};

// Any of the model kinds accepted by files, scenarios, and the CLI.
using ChannelSpec =
    std::variant<FsMacChannel, NoisyReceiverModel, ModuloAdditiveSpec, BinaryMultiplierSpec>;

// Collapses receiver uncertainty into the channel: the new state is sR, the
// new channel law averages the old one over P(s | sR).
FsMacChannel equivalent_channel(const NoisyReceiverModel& model);

FsMacChannel build_modulo_additive(const ModuloAdditiveSpec& spec,
                                   std::uint64_t enumerationLimit = kDefaultEnumerationLimit);

NoisyReceiverModel build_binary_multiplier(const BinaryMultiplierSpec& spec);

// Copy with both encoder observation alphabets collapsed to a single symbol;
// encoder maps then reduce to plain input choices.
FsMacChannel strip_encoder_csi(const FsMacChannel& channel);

}  // namespace fsmac
