#include "fsmac/channel.hpp"

#include <cmath>
#include <string>

#include "fsmac/errors.hpp"
#include "fsmac/strategy.hpp"

namespace fsmac {

void validate_alphabets(const Alphabets& a, std::uint64_t enumerationLimit) {
  auto need = [](std::size_t v, const char* name) {
    if (v == 0) fail(Errc::DimensionMismatch, std::string(name) + " must be positive");
  };
  need(a.nS, "nS");
  need(a.nSa, "nSa");
  need(a.nSb, "nSb");
  need(a.nXa, "nXa");
  need(a.nXb, "nXb");
  need(a.nY, "nY");
  strategy_count(a.nXa, a.nSa, enumerationLimit);
  strategy_count(a.nXb, a.nSb, enumerationLimit);
}

namespace {

void check_kernel_shape(const StochasticKernel& k, std::size_t rows, std::size_t cols,
                        const char* name) {
  if (k.rows() != rows || k.cols() != cols) {
    fail(Errc::DimensionMismatch, std::string(name) + " is " + std::to_string(k.rows()) + "x" +
                                      std::to_string(k.cols()) + ", expected " +
                                      std::to_string(rows) + "x" + std::to_string(cols));
  }
}

}  // namespace

FsMacChannel FsMacChannel::validated(Alphabets alphabets, std::vector<double> stateDist,
                                     StochasticKernel csiA, StochasticKernel csiB,
                                     StochasticKernel channel, std::uint64_t enumerationLimit,
                                     double tolerance) {
  validate_alphabets(alphabets, enumerationLimit);
  if (stateDist.size() != alphabets.nS) fail(Errc::DimensionMismatch, "state distribution size");
  stateDist = validated_distribution(std::move(stateDist), tolerance);
  check_kernel_shape(csiA, alphabets.nS, alphabets.nSa, "csiA");
  check_kernel_shape(csiB, alphabets.nS, alphabets.nSb, "csiB");
  check_kernel_shape(channel, alphabets.nXa * alphabets.nXb * alphabets.nS, alphabets.nY,
                     "channel");
  return FsMacChannel{alphabets, std::move(stateDist), std::move(csiA), std::move(csiB),
                      std::move(channel)};
}

NoisyReceiverModel NoisyReceiverModel::validated(Alphabets alphabets, std::vector<double> srDist,
                                                 StochasticKernel stateGivenSr,
                                                 StochasticKernel csiAGivenSr,
                                                 StochasticKernel csiBGivenSr,
                                                 StochasticKernel channel,
                                                 std::uint64_t enumerationLimit, double tolerance) {
  validate_alphabets(alphabets, enumerationLimit);
  if (alphabets.nSr == 0) fail(Errc::DimensionMismatch, "nSr must be positive");
  if (srDist.size() != alphabets.nSr) fail(Errc::DimensionMismatch, "sR distribution size");
  srDist = validated_distribution(std::move(srDist), tolerance);
  check_kernel_shape(stateGivenSr, alphabets.nSr, alphabets.nS, "stateGivenSr");
  check_kernel_shape(csiAGivenSr, alphabets.nSr, alphabets.nSa, "csiAGivenSr");
  check_kernel_shape(csiBGivenSr, alphabets.nSr, alphabets.nSb, "csiBGivenSr");
  check_kernel_shape(channel, alphabets.nXa * alphabets.nXb * alphabets.nS, alphabets.nY,
                     "channel");
  return NoisyReceiverModel{alphabets,
                            std::move(srDist),
                            std::move(stateGivenSr),
                            std::move(csiAGivenSr),
                            std::move(csiBGivenSr),
                            std::move(channel)};
}

ModuloAdditiveSpec ModuloAdditiveSpec::validated(std::size_t q, std::vector<double> stateDist,
                                                 StochasticKernel csiA, StochasticKernel csiB,
                                                 StochasticKernel noiseGivenState,
                                                 std::uint64_t enumerationLimit,
                                                 double tolerance) {
  if (q < 2) fail(Errc::DimensionMismatch, "q must be at least 2");
  const std::size_t nS = stateDist.size();
  if (nS == 0) fail(Errc::DimensionMismatch, "state distribution size");
  stateDist = validated_distribution(std::move(stateDist), tolerance);
  check_kernel_shape(noiseGivenState, nS, q, "noiseGivenState");
  if (csiA.rows() != nS || csiB.rows() != nS) {
    fail(Errc::DimensionMismatch, "encoder observation kernels must have one row per state");
  }
  Alphabets a{nS, csiA.cols(), csiB.cols(), q, q, q, 0};
  validate_alphabets(a, enumerationLimit);
  return ModuloAdditiveSpec{q, std::move(stateDist), std::move(csiA), std::move(csiB),
                            std::move(noiseGivenState)};
}

BinaryMultiplierSpec BinaryMultiplierSpec::validated(double pS, double pR) {
  if (!(pS >= 0.0 && pS <= 1.0)) fail(Errc::InvalidDistribution, "pS outside [0,1]");
  if (!(pR >= 0.0 && pR <= 1.0)) fail(Errc::InvalidDistribution, "pR outside [0,1]");
  return BinaryMultiplierSpec{pS, pR};
}

FsMacChannel equivalent_channel(const NoisyReceiverModel& model) {
  const Alphabets& a = model.alphabets;
  Alphabets reduced = a;
  reduced.nS = a.nSr;
  reduced.nSr = 0;

  const std::size_t rows = a.nXa * a.nXb * a.nSr;
  std::vector<double> probs(rows * a.nY, 0.0);
  for (std::size_t xA = 0; xA < a.nXa; ++xA) {
    for (std::size_t xB = 0; xB < a.nXb; ++xB) {
      for (std::size_t sr = 0; sr < a.nSr; ++sr) {
        double* out = probs.data() + ((xA * a.nXb + xB) * a.nSr + sr) * a.nY;
        for (std::size_t s = 0; s < a.nS; ++s) {
          const double w = model.stateGivenSr(sr, s);
          if (w == 0.0) continue;
          auto row = model.channel.row(model.channelRow(xA, xB, s));
          for (std::size_t y = 0; y < a.nY; ++y) out[y] += w * row[y];
        }
      }
    }
  }
  return FsMacChannel::validated(reduced, model.srDist, model.csiAGivenSr, model.csiBGivenSr,
                                 StochasticKernel(rows, a.nY, std::move(probs)));
}

FsMacChannel build_modulo_additive(const ModuloAdditiveSpec& spec, std::uint64_t enumerationLimit) {
  const std::size_t q = spec.q;
  const std::size_t nS = spec.stateDist.size();
  Alphabets a{nS, spec.csiA.cols(), spec.csiB.cols(), q, q, q, 0};

  const std::size_t rows = q * q * nS;
  std::vector<double> probs(rows * q, 0.0);
  for (std::size_t xA = 0; xA < q; ++xA) {
    for (std::size_t xB = 0; xB < q; ++xB) {
      for (std::size_t s = 0; s < nS; ++s) {
        double* out = probs.data() + ((xA * q + xB) * nS + s) * q;
        for (std::size_t y = 0; y < q; ++y) {
          const std::size_t z = (y + 2 * q - xA - xB) % q;
          out[y] = spec.noiseGivenState(s, z);
        }
      }
    }
  }
  return FsMacChannel::validated(a, spec.stateDist, spec.csiA, spec.csiB,
                                 StochasticKernel(rows, q, std::move(probs)), enumerationLimit);
}

NoisyReceiverModel build_binary_multiplier(const BinaryMultiplierSpec& spec) {
  const double pS = spec.pS;
  const double pR = spec.pR;
  Alphabets a{2, 1, 1, 2, 2, 2, 2};

  // P(sR): sR = s xor zR
  std::vector<double> srDist = {(1.0 - pS) * (1.0 - pR) + pS * pR,
                                pS * (1.0 - pR) + (1.0 - pS) * pR};

  // Bayes posterior of s given sR; a zero-probability observation gets a
  // uniform row to keep the kernel stochastic (it is never drawn).
  std::vector<double> post(4, 0.0);
  for (std::size_t sr = 0; sr < 2; ++sr) {
    const double joint0 = (sr == 0 ? 1.0 - pR : pR) * (1.0 - pS);
    const double joint1 = (sr == 1 ? 1.0 - pR : pR) * pS;
    const double denom = joint0 + joint1;
    if (denom > 0.0) {
      post[sr * 2 + 0] = joint0 / denom;
      post[sr * 2 + 1] = joint1 / denom;
    } else {
      post[sr * 2 + 0] = post[sr * 2 + 1] = 0.5;
    }
  }

  std::vector<double> channel(2 * 2 * 2 * 2, 0.0);
  for (std::size_t xA = 0; xA < 2; ++xA) {
    for (std::size_t xB = 0; xB < 2; ++xB) {
      for (std::size_t s = 0; s < 2; ++s) {
        const std::size_t y = (xA & xB) ^ s;
        channel[((xA * 2 + xB) * 2 + s) * 2 + y] = 1.0;
      }
    }
  }

  return NoisyReceiverModel::validated(a, std::move(srDist), StochasticKernel(2, 2, std::move(post)),
                                       StochasticKernel::uniformRows(2, 1),
                                       StochasticKernel::uniformRows(2, 1),
                                       StochasticKernel(8, 2, std::move(channel)));
}

FsMacChannel strip_encoder_csi(const FsMacChannel& channel) {
  Alphabets a = channel.alphabets;
  a.nSa = 1;
  a.nSb = 1;
  return FsMacChannel::validated(a, channel.stateDist,
                                 StochasticKernel::uniformRows(a.nS, 1),
                                 StochasticKernel::uniformRows(a.nS, 1), channel.channel);
}

}  // namespace fsmac
