#pragma once

#include <cstdint>
#include <vector>

#include "fsmac/channel.hpp"
#include "fsmac/information.hpp"
#include "fsmac/policy.hpp"

namespace fsmac {

struct OptimizerConfig {
  std::size_t restarts = 16;
  std::size_t maxOuterIters = 500;
  double innerStepTolerance = 1e-9;
  double objectiveTolerance = 1e-8;
  std::uint64_t rngSeed = 0;
  std::size_t gridResolution = 8;
  std::size_t threads = 0;
  std::uint64_t oracleBudget = 100000000;  // objective evaluations
};

// lambda parameterizes the support direction (lambda, 1 - lambda) over the
// achievable (Ra, Rb) set:
//   lambda >= 1/2 maximizes (1-lambda) rSum + (2 lambda - 1) rA
//   lambda <  1/2 maximizes lambda rSum + (1 - 2 lambda) rB
// Joint-encoder problems use lambda rSum + max(0, 1 - 2 lambda) rB.

struct TeamSearchResult {
  double value = 0.0;
  TeamPolicy policy;
  RateTriple rates;
  bool converged = false;
  std::size_t outerIterations = 0;
  std::vector<double> restartValues;
};

struct CooperativeSearchResult {
  double value = 0.0;
  CooperativePolicy policy;
  RatePair rates;
  bool converged = false;
  std::size_t outerIterations = 0;
  std::vector<double> restartValues;
};

struct ConditionedSearchResult {
  double value = 0.0;
  ConditionedInputPolicy policy;
  RateTriple rates;
  bool converged = false;
  std::size_t outerIterations = 0;
  std::vector<double> restartValues;
};

TeamSearchResult maximize_sum_rate(const FsMacChannel& channel, const OptimizerConfig& config = {});

TeamSearchResult maximize_weighted_rate(const FsMacChannel& channel, double lambda,
                                        const OptimizerConfig& config = {});

CooperativeSearchResult maximize_cooperative(const FsMacChannel& channel, double lambda,
                                             const OptimizerConfig& config = {},
                                             bool conditionOnState = true);

ConditionedSearchResult maximize_conditioned_rate(const NoisyReceiverModel& model,
                                                  const std::vector<std::size_t>& fA,
                                                  const std::vector<std::size_t>& fB,
                                                  double lambda,
                                                  const OptimizerConfig& config = {});

struct TeamOracleResult {
  double value = 0.0;
  TeamPolicy policy;
  std::uint64_t evaluations = 0;
};

struct CooperativeOracleResult {
  double value = 0.0;
  CooperativePolicy policy;
  std::uint64_t evaluations = 0;
};

// Certified maximum over all per-block weight vectors with entries on the
// grid {0, 1/g, ..., 1}. Throws OracleBudgetExceeded before doing any work
// that would blow the evaluation budget.
TeamOracleResult exhaustive_oracle_sum_rate(const FsMacChannel& channel, std::size_t gridResolution,
                                            std::uint64_t budget = 100000000);

TeamOracleResult exhaustive_oracle_weighted(const FsMacChannel& channel, double lambda,
                                            std::size_t gridResolution,
                                            std::uint64_t budget = 100000000);

CooperativeOracleResult exhaustive_oracle_cooperative(const FsMacChannel& channel, double lambda,
                                                      std::size_t gridResolution,
                                                      std::uint64_t budget = 100000000,
                                                      bool conditionOnState = true);

struct HMinResult {
  double hMin = 0.0;
  std::uint64_t indexA = 0;
  std::uint64_t indexB = 0;
};

// Exact minimum over all deterministic encoder-map pairs of the conditional
// output-shift entropy; ties resolve to the lexicographically smallest pair.
HMinResult h_min_bruteforce(const ModuloAdditiveSpec& spec);

// Weight 1/q on each cyclic shift of the given pair: encoder a uses t* + tau,
// encoder b uses t* - tau.
TeamPolicy uniform_coset_policy(const ModuloAdditiveSpec& spec, std::uint64_t indexA,
                                std::uint64_t indexB);

}  // namespace fsmac
