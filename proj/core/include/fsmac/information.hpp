#pragma once

#include "fsmac/channel.hpp"
#include "fsmac/distribution.hpp"
#include "fsmac/policy.hpp"
#include "fsmac/strategy.hpp"

namespace fsmac {

struct RateTriple {
  double rA = 0.0;
  double rB = 0.0;
  double rSum = 0.0;
};

struct RatePair {
  double rB = 0.0;
  double rSum = 0.0;
};

// Channel seen from the encoder-map level: rows indexed (tA, tB, s) row-major,
// columns y, averaging the per-symbol law over both observation kernels.
StochasticKernel strategy_channel(const FsMacChannel& channel,
                                  std::uint64_t enumerationLimit = kDefaultEnumerationLimit);

// Joint over axes (S, Ta, Tb, Y) under an independent team policy.
JointDistribution joint_distribution(const FsMacChannel& channel, const TeamPolicy& policy);

// rA  = I(Ta; Y | Tb, S)
// rB  = I(Tb; Y | Ta, S)
// rSum = I(Ta, Tb; Y | S)
RateTriple rate_triple(const FsMacChannel& channel, const TeamPolicy& policy);

// Joint over axes (S, Xa, Tb, Y) under a joint policy on (Xa, Tb).
JointDistribution cooperative_joint(const FsMacChannel& channel, const CooperativePolicy& policy);

// rB = I(Tb; Y | Xa, S), rSum = I(Xa, Tb; Y | S). With conditionOnState=false
// the receiver-side conditioning variable is dropped (no receiver knowledge).
RatePair cooperative_rate_pair(const FsMacChannel& channel, const CooperativePolicy& policy,
                               bool conditionOnState = true);

// Joint over axes (Sr, Xa, Xb, Y): the channel is first reduced via
// equivalent_channel, then inputs are drawn per f(sR).
JointDistribution conditioned_input_joint(const NoisyReceiverModel& model,
                                          const ConditionedInputPolicy& policy);

// rA = I(Xa; Y | Xb, Sr), rB = I(Xb; Y | Xa, Sr), rSum = I(Xa, Xb; Y | Sr).
RateTriple conditioned_input_rate_triple(const NoisyReceiverModel& model,
                                         const ConditionedInputPolicy& policy);

}  // namespace fsmac
