#include "fsmac/information.hpp"

#include <cmath>
#include <string>

#include "fsmac/errors.hpp"

namespace fsmac {

namespace {

void check_policy_sizes(const FsMacChannel& channel, const TeamPolicy& policy) {
  const std::uint64_t cA = strategy_count(channel.alphabets.nXa, channel.alphabets.nSa);
  const std::uint64_t cB = strategy_count(channel.alphabets.nXb, channel.alphabets.nSb);
  if (policy.piA.size() != cA || policy.piB.size() != cB) {
    fail(Errc::DimensionMismatch, "policy sized " + std::to_string(policy.piA.size()) + "/" +
                                      std::to_string(policy.piB.size()) + ", strategy spaces " +
                                      std::to_string(cA) + "/" + std::to_string(cB));
  }
}

RateTriple triple_from_joint(const JointDistribution& joint) {
  // axes: 0 = conditioning state, 1 = first sender variable, 2 = second, 3 = y
  RateTriple t;
  t.rA = conditional_mutual_information(joint, {1}, {3}, {2, 0});
  t.rB = conditional_mutual_information(joint, {2}, {3}, {1, 0});
  t.rSum = conditional_mutual_information(joint, {1, 2}, {3}, {0});
  if (t.rA + t.rB < t.rSum - 1e-9) {
    fail(Errc::InternalInconsistency, "rate triple violates rA + rB >= rSum");
  }
  return t;
}

}  // namespace

TeamPolicy TeamPolicy::validated(std::vector<double> piA, std::vector<double> piB,
                                 double tolerance) {
  return TeamPolicy{validated_distribution(std::move(piA), tolerance),
                    validated_distribution(std::move(piB), tolerance)};
}

TeamPolicy TeamPolicy::uniform(std::size_t countA, std::size_t countB) {
  return TeamPolicy{std::vector<double>(countA, 1.0 / static_cast<double>(countA)),
                    std::vector<double>(countB, 1.0 / static_cast<double>(countB))};
}

CooperativePolicy CooperativePolicy::validated(std::size_t nXa, std::size_t nTb,
                                               std::vector<double> piJoint, double tolerance) {
  if (piJoint.size() != nXa * nTb) fail(Errc::DimensionMismatch, "joint policy size");
  return CooperativePolicy{nXa, nTb, validated_distribution(std::move(piJoint), tolerance)};
}

ConditionedInputPolicy ConditionedInputPolicy::validated(StochasticKernel piAGivenCsi,
                                                         StochasticKernel piBGivenCsi,
                                                         std::vector<std::size_t> fA,
                                                         std::vector<std::size_t> fB) {
  if (fA.size() != fB.size() || fA.empty()) {
    fail(Errc::DimensionMismatch, "observation maps must cover the receiver alphabet");
  }
  for (std::size_t v : fA) {
    if (v >= piAGivenCsi.rows()) fail(Errc::IndexOutOfRange, "fA target " + std::to_string(v));
  }
  for (std::size_t v : fB) {
    if (v >= piBGivenCsi.rows()) fail(Errc::IndexOutOfRange, "fB target " + std::to_string(v));
  }
  return ConditionedInputPolicy{std::move(piAGivenCsi), std::move(piBGivenCsi), std::move(fA),
                                std::move(fB)};
}

StochasticKernel strategy_channel(const FsMacChannel& channel, std::uint64_t enumerationLimit) {
  const Alphabets& a = channel.alphabets;
  StrategySpace spaceA(a.nXa, a.nSa, enumerationLimit);
  StrategySpace spaceB(a.nXb, a.nSb, enumerationLimit);
  const std::size_t nTa = static_cast<std::size_t>(spaceA.count());
  const std::size_t nTb = static_cast<std::size_t>(spaceB.count());
  const std::vector<std::size_t> tabA = spaceA.outputTable();
  const std::vector<std::size_t> tabB = spaceB.outputTable();

  const std::size_t rows = nTa * nTb * a.nS;
  std::vector<double> probs(rows * a.nY, 0.0);
  for (std::size_t tA = 0; tA < nTa; ++tA) {
    for (std::size_t tB = 0; tB < nTb; ++tB) {
      for (std::size_t s = 0; s < a.nS; ++s) {
        double* out = probs.data() + ((tA * nTb + tB) * a.nS + s) * a.nY;
        for (std::size_t sa = 0; sa < a.nSa; ++sa) {
          const double wa = channel.csiA(s, sa);
          if (wa == 0.0) continue;
          const std::size_t xA = tabA[tA * a.nSa + sa];
          for (std::size_t sb = 0; sb < a.nSb; ++sb) {
            const double w = wa * channel.csiB(s, sb);
            if (w == 0.0) continue;
            auto row = channel.channel.row(channel.channelRow(xA, tabB[tB * a.nSb + sb], s));
            for (std::size_t y = 0; y < a.nY; ++y) out[y] += w * row[y];
          }
        }
      }
    }
  }
  return StochasticKernel(rows, a.nY, std::move(probs));
}

JointDistribution joint_distribution(const FsMacChannel& channel, const TeamPolicy& policy) {
  check_policy_sizes(channel, policy);
  const Alphabets& a = channel.alphabets;
  const StochasticKernel k = strategy_channel(channel);
  const std::size_t nTa = policy.piA.size();
  const std::size_t nTb = policy.piB.size();

  std::vector<double> probs(a.nS * nTa * nTb * a.nY, 0.0);
  for (std::size_t s = 0; s < a.nS; ++s) {
    const double ps = channel.stateDist[s];
    for (std::size_t tA = 0; tA < nTa; ++tA) {
      const double wa = ps * policy.piA[tA];
      if (wa == 0.0) continue;
      for (std::size_t tB = 0; tB < nTb; ++tB) {
        const double w = wa * policy.piB[tB];
        if (w == 0.0) continue;
        auto row = k.row((tA * nTb + tB) * a.nS + s);
        double* out = probs.data() + ((s * nTa + tA) * nTb + tB) * a.nY;
        for (std::size_t y = 0; y < a.nY; ++y) out[y] = w * row[y];
      }
    }
  }
  return JointDistribution({a.nS, nTa, nTb, a.nY}, {"S", "Ta", "Tb", "Y"}, std::move(probs));
}

RateTriple rate_triple(const FsMacChannel& channel, const TeamPolicy& policy) {
  return triple_from_joint(joint_distribution(channel, policy));
}

JointDistribution cooperative_joint(const FsMacChannel& channel, const CooperativePolicy& policy) {
  const Alphabets& a = channel.alphabets;
  StrategySpace spaceB(a.nXb, a.nSb);
  const std::size_t nTb = static_cast<std::size_t>(spaceB.count());
  if (policy.nXa != a.nXa || policy.nTb != nTb) {
    fail(Errc::DimensionMismatch, "joint policy shape " + std::to_string(policy.nXa) + "x" +
                                      std::to_string(policy.nTb));
  }
  const std::vector<std::size_t> tabB = spaceB.outputTable();

  std::vector<double> probs(a.nS * a.nXa * nTb * a.nY, 0.0);
  for (std::size_t s = 0; s < a.nS; ++s) {
    const double ps = channel.stateDist[s];
    for (std::size_t xA = 0; xA < a.nXa; ++xA) {
      for (std::size_t tB = 0; tB < nTb; ++tB) {
        const double w = ps * policy(xA, tB);
        if (w == 0.0) continue;
        double* out = probs.data() + ((s * a.nXa + xA) * nTb + tB) * a.nY;
        for (std::size_t sb = 0; sb < a.nSb; ++sb) {
          const double wb = w * channel.csiB(s, sb);
          if (wb == 0.0) continue;
          auto row = channel.channel.row(channel.channelRow(xA, tabB[tB * a.nSb + sb], s));
          for (std::size_t y = 0; y < a.nY; ++y) out[y] += wb * row[y];
        }
      }
    }
  }
  return JointDistribution({a.nS, a.nXa, nTb, a.nY}, {"S", "Xa", "Tb", "Y"}, std::move(probs));
}

RatePair cooperative_rate_pair(const FsMacChannel& channel, const CooperativePolicy& policy,
                               bool conditionOnState) {
  const JointDistribution joint = cooperative_joint(channel, policy);
  const std::vector<std::size_t> cond = conditionOnState ? std::vector<std::size_t>{0}
                                                         : std::vector<std::size_t>{};
  RatePair p;
  auto withCond = [&](std::vector<std::size_t> axes) {
    axes.insert(axes.end(), cond.begin(), cond.end());
    return axes;
  };
  p.rB = conditional_mutual_information(joint, {2}, {3}, withCond({1}));
  p.rSum = conditional_mutual_information(joint, {1, 2}, {3}, cond);
  if (p.rSum < p.rB - 1e-9) {
    fail(Errc::InternalInconsistency, "cooperative pair violates rSum >= rB");
  }
  return p;
}

JointDistribution conditioned_input_joint(const NoisyReceiverModel& model,
                                          const ConditionedInputPolicy& policy) {
  const FsMacChannel reduced = equivalent_channel(model);
  const Alphabets& a = reduced.alphabets;  // nS here is the receiver alphabet
  if (policy.fA.size() != a.nS || policy.fB.size() != a.nS) {
    fail(Errc::DimensionMismatch, "observation maps must have one entry per receiver symbol");
  }
  if (policy.piAGivenCsi.cols() != a.nXa || policy.piBGivenCsi.cols() != a.nXb) {
    fail(Errc::DimensionMismatch, "input policy column count");
  }

  std::vector<double> probs(a.nS * a.nXa * a.nXb * a.nY, 0.0);
  for (std::size_t sr = 0; sr < a.nS; ++sr) {
    const double ps = reduced.stateDist[sr];
    auto rowA = policy.piAGivenCsi.row(policy.fA[sr]);
    auto rowB = policy.piBGivenCsi.row(policy.fB[sr]);
    for (std::size_t xA = 0; xA < a.nXa; ++xA) {
      const double wa = ps * rowA[xA];
      if (wa == 0.0) continue;
      for (std::size_t xB = 0; xB < a.nXb; ++xB) {
        const double w = wa * rowB[xB];
        if (w == 0.0) continue;
        auto row = reduced.channel.row(reduced.channelRow(xA, xB, sr));
        double* out = probs.data() + ((sr * a.nXa + xA) * a.nXb + xB) * a.nY;
        for (std::size_t y = 0; y < a.nY; ++y) out[y] = w * row[y];
      }
    }
  }
  return JointDistribution({a.nS, a.nXa, a.nXb, a.nY}, {"Sr", "Xa", "Xb", "Y"}, std::move(probs));
}

RateTriple conditioned_input_rate_triple(const NoisyReceiverModel& model,
                                         const ConditionedInputPolicy& policy) {
  return triple_from_joint(conditioned_input_joint(model, policy));
}

}  // namespace fsmac
