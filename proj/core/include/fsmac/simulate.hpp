#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fsmac/channel.hpp"
#include "fsmac/distribution.hpp"
#include "fsmac/policy.hpp"

namespace fsmac {

struct SimulationParams {
  std::size_t n = 1;       // block length
  double rateA = 0.0;      // bits per channel use
  double rateB = 0.0;
  double epsilon = 0.05;   // typicality slack
  std::size_t trials = 100;
  std::uint64_t rngSeed = 0;
  std::uint64_t codewordBudget = 1ull << 16;  // cap on |bookA| + |bookB| for literal decoding
  std::size_t threads = 0;
};

// ceil(2^(n * rate)), saturating near the top of the 64-bit range
std::uint64_t message_count(std::size_t n, double rate);

struct Codebooks {
  std::size_t n = 0;
  std::uint64_t countA = 0;
  std::uint64_t countB = 0;
  std::vector<std::uint32_t> bookA;  // [message * n + t] -> encoder-a strategy index
  std::vector<std::uint32_t> bookB;
  TeamPolicy generatingPolicy;
};

// Deterministic in params.rngSeed; every symbol i.i.d. from the policy.
Codebooks generate_codebooks(const TeamPolicy& policy, const SimulationParams& params);

// Per-symbol log2 tables and entropies for every nonempty coordinate subset
// of (S, Ta, Tb, Y); a tuple of sequences is epsilon-typical when each
// subset's empirical log-probability rate sits within epsilon of that
// subset's entropy. Zero-probability cells make a sequence atypical.
class TypicalityContext {
 public:
  // referenceJoint axes must be (S, Ta, Tb, Y) in that order
  explicit TypicalityContext(const JointDistribution& referenceJoint);

  bool typical(std::span<const std::size_t> s, std::span<const std::size_t> tA,
               std::span<const std::size_t> tB, std::span<const std::size_t> y,
               double epsilon) const;

  double subsetEntropy(unsigned mask) const { return entropies_[mask]; }
  std::size_t nS() const { return nS_; }
  std::size_t nTa() const { return nTa_; }
  std::size_t nTb() const { return nTb_; }
  std::size_t nY() const { return nY_; }
  // 16 log2 values per joint cell, indexed [cell * 16 + mask]; -inf on zeros
  const std::vector<double>& logTable() const { return logProb_; }

 private:
  std::size_t nS_, nTa_, nTb_, nY_;
  std::array<double, 16> entropies_{};
  std::vector<double> logProb_;
};

struct DecodeOutcome {
  std::uint64_t passingPairs = 0;
  std::uint64_t wA = 0;  // meaningful only when passingPairs == 1
  std::uint64_t wB = 0;
};

// All-pairs search for message pairs whose codewords are jointly typical
// with the received output and state sequences.
DecodeOutcome joint_typicality_decode(const Codebooks& books, std::span<const std::size_t> ySeq,
                                      std::span<const std::size_t> sSeq, double epsilon,
                                      const TypicalityContext& reference);

enum class FailureMode { None, TruthAtypical, Ambiguous, WrongUnique };

struct TrialOutcome {
  std::uint64_t truthA = 0;
  std::uint64_t truthB = 0;
  std::uint64_t decodedA = 0;  // meaningful only when a unique pair passed
  std::uint64_t decodedB = 0;
  bool error = false;
  // Probability that this trial errs: the observed indicator under literal
  // decoding, or truth-atypicality combined with the expected competitor
  // mass when the codebooks are only scored.
  double errorProbability = 0.0;
  FailureMode mode = FailureMode::None;
};

// One end-to-end transmission: uniform messages, i.i.d. state triples,
// strategy-encoded inputs, channel sampling, all-pairs typicality decoding.
// Deterministic given (params.rngSeed, trialIndex).
TrialOutcome run_trial(const FsMacChannel& channel, const Codebooks& books,
                       const SimulationParams& params, std::uint64_t trialIndex);

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
};

// 95% score interval for a binomial proportion
WilsonInterval wilson_interval(std::uint64_t errors, std::uint64_t trials);

struct ErrorReport {
  SimulationParams params;
  std::uint64_t messagesA = 0;
  std::uint64_t messagesB = 0;
  // True when every message pair was decoded literally. When the codebooks
  // would blow the codeword budget, competitors are scored through their
  // expected typicality mass instead (truth typicality stays exact).
  bool literalDecoding = true;
  std::uint64_t errors = 0;
  std::uint64_t truthAtypical = 0;
  std::uint64_t ambiguous = 0;
  std::uint64_t wrongUnique = 0;
  // Mean per-trial error probability. Equal to errors/trials under literal
  // decoding; smoother (and still seeded-deterministic) in the scored
  // regime, where counting 0/200 would hide the rate-versus-n trend.
  double errorRate = 0.0;
  WilsonInterval wilson;  // binomial interval on the integer error count

  std::string csv() const;  // header plus one data row
};

ErrorReport estimate_error(const FsMacChannel& channel, const TeamPolicy& policy,
                           const SimulationParams& params);

}  // namespace fsmac
