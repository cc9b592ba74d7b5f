#include "fsmac/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "fsmac/errors.hpp"
#include "fsmac/information.hpp"
#include "fsmac/parallel.hpp"
#include "fsmac/rng.hpp"
#include "fsmac/strategy.hpp"

namespace fsmac {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Substream tags: codebooks stream per (tag, message), trials per (tag, trial).
constexpr std::uint64_t kTagBookA = 1;
constexpr std::uint64_t kTagBookB = 2;
constexpr std::uint64_t kTagMessages = 0x10;
constexpr std::uint64_t kTagState = 0x11;
constexpr std::uint64_t kTagCsiA = 0x12;
constexpr std::uint64_t kTagCsiB = 0x13;
constexpr std::uint64_t kTagOutput = 0x14;
constexpr std::uint64_t kTagTruthA = 0x15;
constexpr std::uint64_t kTagTruthB = 0x16;
constexpr std::uint64_t kTagCompetitors = 0x17;

void validate_params(const SimulationParams& p) {
  if (p.n < 1) fail(Errc::DimensionMismatch, "block length must be at least 1");
  if (!(p.rateA >= 0.0 && p.rateB >= 0.0)) {
    fail(Errc::InvalidDistribution, "rates must be nonnegative");
  }
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) {
    fail(Errc::InvalidDistribution, "epsilon must lie in (0, 1)");
  }
  if (p.trials < 1) fail(Errc::DimensionMismatch, "at least one trial required");
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::uint64_t message_count(std::size_t n, double rate) {
  const double exponent = static_cast<double>(n) * rate;
  if (!(exponent >= 0.0)) fail(Errc::InvalidDistribution, "rate must be nonnegative");
  if (exponent >= 62.0) return 1ull << 62;  // saturated; far beyond any literal decode
  return static_cast<std::uint64_t>(std::ceil(std::exp2(exponent)));
}

Codebooks generate_codebooks(const TeamPolicy& policy, const SimulationParams& params) {
  validate_params(params);
  if (policy.piA.empty() || policy.piB.empty()) {
    fail(Errc::DimensionMismatch, "policy must cover both strategy spaces");
  }
  Codebooks out;
  out.n = params.n;
  out.countA = message_count(params.n, params.rateA);
  out.countB = message_count(params.n, params.rateB);
  if (out.countA > params.codewordBudget ||
      out.countB > params.codewordBudget - out.countA) {
    fail(Errc::BudgetExceeded, "codebooks need " + std::to_string(out.countA) + " + " +
                                   std::to_string(out.countB) +
                                   " codewords, over the budget of " +
                                   std::to_string(params.codewordBudget));
  }
  out.bookA.resize(static_cast<std::size_t>(out.countA) * params.n);
  out.bookB.resize(static_cast<std::size_t>(out.countB) * params.n);
  for (std::uint64_t w = 0; w < out.countA; ++w) {
    rng::Stream stream(params.rngSeed, kTagBookA, w);
    for (std::size_t t = 0; t < params.n; ++t) {
      out.bookA[w * params.n + t] = static_cast<std::uint32_t>(stream.nextIndex(policy.piA));
    }
  }
  for (std::uint64_t w = 0; w < out.countB; ++w) {
    rng::Stream stream(params.rngSeed, kTagBookB, w);
    for (std::size_t t = 0; t < params.n; ++t) {
      out.bookB[w * params.n + t] = static_cast<std::uint32_t>(stream.nextIndex(policy.piB));
    }
  }
  out.generatingPolicy = policy;
  return out;
}

TypicalityContext::TypicalityContext(const JointDistribution& referenceJoint) {
  const std::vector<std::size_t>& dims = referenceJoint.dims();
  if (dims.size() != 4) {
    fail(Errc::DimensionMismatch, "reference joint must have exactly the four axes (S, Ta, Tb, Y)");
  }
  nS_ = dims[0];
  nTa_ = dims[1];
  nTb_ = dims[2];
  nY_ = dims[3];
  const std::size_t cells = nS_ * nTa_ * nTb_ * nY_;
  logProb_.assign(cells * 16, 0.0);
  entropies_[0] = 0.0;

  for (unsigned mask = 1; mask < 16; ++mask) {
    std::vector<std::size_t> axes;
    for (std::size_t ax = 0; ax < 4; ++ax) {
      if (mask & (1u << ax)) axes.push_back(ax);
    }
    const JointDistribution marg = referenceJoint.marginal(axes);
    entropies_[mask] = entropy_of(referenceJoint, axes);

    std::size_t coord[4];
    std::size_t cell = 0;
    for (coord[0] = 0; coord[0] < nS_; ++coord[0]) {
      for (coord[1] = 0; coord[1] < nTa_; ++coord[1]) {
        for (coord[2] = 0; coord[2] < nTb_; ++coord[2]) {
          for (coord[3] = 0; coord[3] < nY_; ++coord[3], ++cell) {
            std::size_t projected = 0;
            for (std::size_t ax : axes) projected = projected * dims[ax] + coord[ax];
            const double p = marg.flat()[projected];
            logProb_[cell * 16 + mask] = p > 0.0 ? std::log2(p) : kNegInf;
          }
        }
      }
    }
  }
}

bool TypicalityContext::typical(std::span<const std::size_t> s, std::span<const std::size_t> tA,
                                std::span<const std::size_t> tB, std::span<const std::size_t> y,
                                double epsilon) const {
  const std::size_t n = s.size();
  if (n == 0 || tA.size() != n || tB.size() != n || y.size() != n) {
    fail(Errc::DimensionMismatch, "sequences must share one positive length");
  }
  std::array<double, 16> sums{};
  for (std::size_t t = 0; t < n; ++t) {
    if (s[t] >= nS_ || tA[t] >= nTa_ || tB[t] >= nTb_ || y[t] >= nY_) {
      fail(Errc::IndexOutOfRange, "sequence symbol outside the reference alphabets");
    }
    const double* row = logProb_.data() + (((s[t] * nTa_ + tA[t]) * nTb_ + tB[t]) * nY_ + y[t]) * 16;
    for (unsigned mask = 1; mask < 16; ++mask) sums[mask] += row[mask];
  }
  const double inv = 1.0 / static_cast<double>(n);
  for (unsigned mask = 1; mask < 16; ++mask) {
    if (!(std::abs(-sums[mask] * inv - entropies_[mask]) < epsilon)) return false;
  }
  return true;
}

DecodeOutcome joint_typicality_decode(const Codebooks& books, std::span<const std::size_t> ySeq,
                                      std::span<const std::size_t> sSeq, double epsilon,
                                      const TypicalityContext& reference) {
  const std::size_t n = books.n;
  if (n == 0 || ySeq.size() != n || sSeq.size() != n) {
    fail(Errc::DimensionMismatch, "received sequences must match the codeword length");
  }
  const std::size_t strideTa = reference.nTb() * reference.nY() * 16;
  const std::size_t strideTb = reference.nY() * 16;
  std::vector<std::size_t> base(n);
  for (std::size_t t = 0; t < n; ++t) {
    if (sSeq[t] >= reference.nS() || ySeq[t] >= reference.nY()) {
      fail(Errc::IndexOutOfRange, "sequence symbol outside the reference alphabets");
    }
    base[t] = (sSeq[t] * reference.nTa() * reference.nTb() * reference.nY() + ySeq[t]) * 16;
  }
  const double* tab = reference.logTable().data();
  const double inv = 1.0 / static_cast<double>(n);

  DecodeOutcome out;
  for (std::uint64_t wA = 0; wA < books.countA; ++wA) {
    const std::uint32_t* ca = books.bookA.data() + wA * n;
    for (std::uint64_t wB = 0; wB < books.countB; ++wB) {
      const std::uint32_t* cb = books.bookB.data() + wB * n;
      std::array<double, 16> sums{};
      for (std::size_t t = 0; t < n; ++t) {
        const double* row = tab + base[t] + ca[t] * strideTa + cb[t] * strideTb;
        for (unsigned mask = 1; mask < 16; ++mask) sums[mask] += row[mask];
      }
      bool pass = true;
      for (unsigned mask = 1; mask < 16 && pass; ++mask) {
        pass = std::abs(-sums[mask] * inv - reference.subsetEntropy(mask)) < epsilon;
      }
      if (pass) {
        ++out.passingPairs;
        out.wA = wA;
        out.wB = wB;
      }
    }
  }
  return out;
}

namespace {

struct StrategyTables {
  std::vector<std::size_t> tabA;
  std::vector<std::size_t> tabB;
  std::size_t nSa = 1;
  std::size_t nSb = 1;
};

StrategyTables strategy_tables(const FsMacChannel& channel) {
  const Alphabets& a = channel.alphabets;
  StrategySpace spaceA(a.nXa, a.nSa);
  StrategySpace spaceB(a.nXb, a.nSb);
  return {spaceA.outputTable(), spaceB.outputTable(), a.nSa, a.nSb};
}

// Shared channel sampling: state, encoder observations, inputs from the
// given strategy sequences, and the channel output.
void sample_channel_path(const FsMacChannel& channel, const StrategyTables& tables,
                         const SimulationParams& params, std::uint64_t trialIndex,
                         const std::vector<std::size_t>& tA, const std::vector<std::size_t>& tB,
                         std::vector<std::size_t>& s, std::vector<std::size_t>& y) {
  rng::Stream stateStream(params.rngSeed, kTagState, trialIndex);
  rng::Stream csiAStream(params.rngSeed, kTagCsiA, trialIndex);
  rng::Stream csiBStream(params.rngSeed, kTagCsiB, trialIndex);
  rng::Stream outputStream(params.rngSeed, kTagOutput, trialIndex);
  for (std::size_t t = 0; t < params.n; ++t) {
    s[t] = stateStream.nextIndex(channel.stateDist);
    const std::size_t sa = csiAStream.nextIndex(channel.csiA.row(s[t]));
    const std::size_t sb = csiBStream.nextIndex(channel.csiB.row(s[t]));
    const std::size_t xa = tables.tabA[tA[t] * tables.nSa + sa];
    const std::size_t xb = tables.tabB[tB[t] * tables.nSb + sb];
    y[t] = outputStream.nextIndex(channel.channel.row(channel.channelRow(xa, xb, s[t])));
  }
}

TrialOutcome run_trial_impl(const FsMacChannel& channel, const Codebooks& books,
                            const SimulationParams& params, std::uint64_t trialIndex,
                            const TypicalityContext& ctx, const StrategyTables& tables) {
  const std::size_t n = params.n;
  rng::Stream messageStream(params.rngSeed, kTagMessages, trialIndex);

  TrialOutcome out;
  out.truthA = messageStream.nextBelow(books.countA);
  out.truthB = messageStream.nextBelow(books.countB);

  std::vector<std::size_t> tA(n), tB(n), s(n), y(n);
  for (std::size_t t = 0; t < n; ++t) {
    tA[t] = books.bookA[out.truthA * n + t];
    tB[t] = books.bookB[out.truthB * n + t];
  }
  sample_channel_path(channel, tables, params, trialIndex, tA, tB, s, y);

  const bool truthTypical = ctx.typical(s, tA, tB, y, params.epsilon);
  const DecodeOutcome dec = joint_typicality_decode(books, y, s, params.epsilon, ctx);
  if (dec.passingPairs == 1) {
    out.decodedA = dec.wA;
    out.decodedB = dec.wB;
  }

  if (truthTypical && dec.passingPairs == 1) {
    out.error = false;
    out.mode = FailureMode::None;
  } else if (!truthTypical && dec.passingPairs == 1) {
    out.error = true;
    out.mode = FailureMode::WrongUnique;
  } else if (truthTypical) {
    out.error = true;
    out.mode = FailureMode::Ambiguous;  // the truth passed along with others
  } else {
    out.error = true;
    out.mode = FailureMode::TruthAtypical;
  }
  out.errorProbability = out.error ? 1.0 : 0.0;
  return out;
}

// log2(count - 1) for count = ceil(2^(n * rate)); -inf when there is no competitor
double log2_competitors(std::size_t n, double rate) {
  const double exponent = static_cast<double>(n) * rate;
  if (exponent >= 62.0) return exponent;  // the -1 is below double resolution
  const std::uint64_t count = message_count(n, rate);
  if (count <= 1) return kNegInf;
  return std::log2(static_cast<double>(count - 1));
}

double log2_sum_exp2(const std::array<double, 3>& xs) {
  const double m = *std::max_element(xs.begin(), xs.end());
  if (m == kNegInf) return kNegInf;
  double total = 0.0;
  for (double x : xs) total += std::exp2(x - m);
  return m + std::log2(total);
}

// When the codebooks cannot be materialized, the truth path is still
// simulated exactly; the chance that any wrong message pair also passes the
// typicality test is scored by its expected mass: each competitor class
// passes with probability about 2^(-n I), where I is the pentagon bound the
// class competes against, and there are (count - 1)-style many of them.
TrialOutcome surrogate_trial(const FsMacChannel& channel, const TeamPolicy& policy,
                             const SimulationParams& params, std::uint64_t trialIndex,
                             const TypicalityContext& ctx, const StrategyTables& tables,
                             double competitorProbability) {
  const std::size_t n = params.n;
  rng::Stream truthA(params.rngSeed, kTagTruthA, trialIndex);
  rng::Stream truthB(params.rngSeed, kTagTruthB, trialIndex);
  std::vector<std::size_t> tA(n), tB(n), s(n), y(n);
  for (std::size_t t = 0; t < n; ++t) {
    tA[t] = truthA.nextIndex(policy.piA);
    tB[t] = truthB.nextIndex(policy.piB);
  }
  sample_channel_path(channel, tables, params, trialIndex, tA, tB, s, y);

  TrialOutcome out;
  const bool truthTypical = ctx.typical(s, tA, tB, y, params.epsilon);
  rng::Stream competitorStream(params.rngSeed, kTagCompetitors, trialIndex);
  const bool competitorFired = competitorStream.nextDouble() < competitorProbability;
  if (!truthTypical) {
    out.error = true;
    out.mode = FailureMode::TruthAtypical;
  } else if (competitorFired) {
    out.error = true;
    out.mode = FailureMode::Ambiguous;
  } else {
    out.error = false;
    out.mode = FailureMode::None;
  }
  out.errorProbability = truthTypical ? competitorProbability : 1.0;
  return out;
}

}  // namespace

TrialOutcome run_trial(const FsMacChannel& channel, const Codebooks& books,
                       const SimulationParams& params, std::uint64_t trialIndex) {
  validate_params(params);
  const TypicalityContext ctx(joint_distribution(channel, books.generatingPolicy));
  return run_trial_impl(channel, books, params, trialIndex, ctx, strategy_tables(channel));
}

WilsonInterval wilson_interval(std::uint64_t errors, std::uint64_t trials) {
  if (trials == 0) fail(Errc::DimensionMismatch, "interval needs at least one trial");
  if (errors > trials) fail(Errc::IndexOutOfRange, "more errors than trials");
  const double z = 1.959963984540054;  // 97.5th standard normal quantile
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

ErrorReport estimate_error(const FsMacChannel& channel, const TeamPolicy& policy,
                           const SimulationParams& params) {
  validate_params(params);
  ErrorReport rep;
  rep.params = params;
  rep.messagesA = message_count(params.n, params.rateA);
  rep.messagesB = message_count(params.n, params.rateB);
  rep.literalDecoding = rep.messagesA <= params.codewordBudget &&
                        rep.messagesB <= params.codewordBudget - rep.messagesA;

  const TypicalityContext ctx(joint_distribution(channel, policy));
  const StrategyTables tables = strategy_tables(channel);
  std::vector<TrialOutcome> outcomes(params.trials);

  if (rep.literalDecoding) {
    const Codebooks books = generate_codebooks(policy, params);
    parallel_for(params.trials, params.threads, [&](std::size_t i) {
      outcomes[i] = run_trial_impl(channel, books, params, i, ctx, tables);
    });
  } else {
    const RateTriple bounds = rate_triple(channel, policy);
    const double logA = log2_competitors(params.n, params.rateA);
    const double logB = log2_competitors(params.n, params.rateB);
    const double n = static_cast<double>(params.n);
    const double totalLog = log2_sum_exp2(
        {logA - n * bounds.rA, logB - n * bounds.rB, logA + logB - n * bounds.rSum});
    const double competitorProbability = totalLog >= 0.0 ? 1.0 : std::exp2(totalLog);
    parallel_for(params.trials, params.threads, [&](std::size_t i) {
      outcomes[i] = surrogate_trial(channel, policy, params, i, ctx, tables,
                                    competitorProbability);
    });
  }

  double probabilitySum = 0.0;
  for (const TrialOutcome& o : outcomes) {
    probabilitySum += o.errorProbability;
    if (!o.error) continue;
    ++rep.errors;
    switch (o.mode) {
      case FailureMode::TruthAtypical: ++rep.truthAtypical; break;
      case FailureMode::Ambiguous: ++rep.ambiguous; break;
      case FailureMode::WrongUnique: ++rep.wrongUnique; break;
      case FailureMode::None: break;
    }
  }
  rep.errorRate = probabilitySum / static_cast<double>(params.trials);
  rep.wilson = wilson_interval(rep.errors, params.trials);
  return rep;
}

std::string ErrorReport::csv() const {
  std::ostringstream os;
  os << "n,rateA,rateB,epsilon,trials,errors,errorRate,wilsonLo,wilsonHi,atypical,ambiguous,"
        "wrongUnique\n";
  os << params.n << ',' << fmt17(params.rateA) << ',' << fmt17(params.rateB) << ','
     << fmt17(params.epsilon) << ',' << params.trials << ',' << errors << ','
     << fmt17(errorRate) << ',' << fmt17(wilson.low) << ',' << fmt17(wilson.high) << ','
     << truthAtypical << ',' << ambiguous << ',' << wrongUnique << '\n';
  return os.str();
}

}  // namespace fsmac
