#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <unordered_map>
#include <vector>

#include "fsmac/channel.hpp"
#include "fsmac/distribution.hpp"
#include "fsmac/information.hpp"
#include "fsmac/policy.hpp"
#include "fsmac/strategy.hpp"
#include "helpers.hpp"

using namespace fsmac;
using testutil::error_code_of;

namespace {

// direct-sum reference for I(A;B|C): every joint cell contributes
// p log2(p_abc p_c / (p_ac p_bc)), with marginals accumulated by mixed-radix
// keys so the library's entropy-difference route is checked independently
double cmi_reference(const JointDistribution& joint, const std::vector<std::size_t>& A,
                     const std::vector<std::size_t>& B, const std::vector<std::size_t>& C) {
  const auto& dims = joint.dims();
  const auto& flat = joint.flat();
  const std::size_t k = dims.size();
  std::vector<std::size_t> stride(k, 1);
  for (std::size_t i = k; i-- > 1;) stride[i - 1] = stride[i] * dims[i];

  auto key = [&](std::size_t cell, const std::vector<std::size_t>& axes) {
    std::size_t v = 0;
    for (std::size_t a : axes) v = v * dims[a] + (cell / stride[a]) % dims[a];
    return v;
  };
  auto accumulate = [&](const std::vector<std::size_t>& axes) {
    std::unordered_map<std::size_t, double> m;
    for (std::size_t cell = 0; cell < flat.size(); ++cell) {
      if (flat[cell] > 0.0) m[key(cell, axes)] += flat[cell];
    }
    return m;
  };
  auto join = [](std::vector<std::size_t> u, const std::vector<std::size_t>& v) {
    u.insert(u.end(), v.begin(), v.end());
    return u;
  };

  const auto AC = join(A, C), BC = join(B, C), ABC = join(join(A, B), C);
  auto mac = accumulate(AC), mbc = accumulate(BC), mabc = accumulate(ABC), mc = accumulate(C);
  double total = 0.0;
  for (std::size_t cell = 0; cell < flat.size(); ++cell) {
    const double p = flat[cell];
    if (p <= 0.0) continue;
    const double pc = C.empty() ? 1.0 : mc[key(cell, C)];
    total += p * (std::log2(mabc[key(cell, ABC)]) + std::log2(pc) -
                  std::log2(mac[key(cell, AC)]) - std::log2(mbc[key(cell, BC)]));
  }
  return total;
}

JointDistribution random_joint(std::uint64_t seed, std::vector<std::size_t> dims) {
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  fsmac::rng::Stream g(seed, 0x10f);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < dims.size(); ++i) labels.push_back("v" + std::to_string(i));
  return JointDistribution(std::move(dims), std::move(labels), fsmac::rng::dirichlet(g, total));
}

}  // namespace

TEST_CASE("entropy in bits with frozen reference values") {
  CHECK(entropy(std::vector<double>{0.5, 0.5}) == 1.0);
  CHECK(entropy(std::vector<double>{1.0, 0.0}) == 0.0);
  CHECK(entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}) == 2.0);
  // binary entropies computed once from -p log2 p - (1-p) log2 (1-p)
  CHECK(std::abs(entropy(std::vector<double>{0.9, 0.1}) - 0.46899559358928116) < 1e-12);
  CHECK(std::abs(entropy(std::vector<double>{0.25, 0.75}) - 0.8112781244591328) < 1e-12);

  CHECK(error_code_of([] { entropy(std::vector<double>{0.6, 0.6}); }) ==
        Errc::InvalidDistribution);
  CHECK(error_code_of([] { entropy(std::vector<double>{-0.5, 1.5}); }) ==
        Errc::InvalidDistribution);
}

TEST_CASE("joint distribution marginals") {
  // dyadic masses so every partial sum is exact
  const JointDistribution j({2, 2}, {"A", "B"}, {0.125, 0.25, 0.5, 0.125});
  CHECK(j.sum() == 1.0);
  CHECK(j.axis("A") == 0);
  CHECK(j.axis("B") == 1);
  CHECK(error_code_of([&] { j.axis("nope"); }) == Errc::IndexOutOfRange);

  CHECK(j.marginal({0}).flat() == std::vector<double>{0.375, 0.625});
  CHECK(j.marginal({1}).flat() == std::vector<double>{0.625, 0.375});
  // listed order is the output order: (B, A) transposes
  CHECK(j.marginal({1, 0}).flat() == std::vector<double>{0.125, 0.5, 0.25, 0.125});
  CHECK(j.marginal({1, 0}).labels() == std::vector<std::string>{"B", "A"});

  CHECK(error_code_of([&] { j.marginal({2}); }) == Errc::IndexOutOfRange);
  CHECK(error_code_of([] {
          JointDistribution({2}, {"A"}, {0.3, 0.3});
        }) == Errc::InvalidDistribution);
}

TEST_CASE("conditional mutual information matches the direct sum") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const JointDistribution j = random_joint(seed, {2, 3, 2, 2});
    const struct {
      std::vector<std::size_t> a, b, c;
    } splits[] = {
        {{0}, {3}, {1, 2}}, {{1}, {3}, {0}}, {{0, 1}, {3}, {2}}, {{2}, {0, 3}, {}}, {{0}, {1}, {}},
    };
    for (const auto& sp : splits) {
      const double lib = conditional_mutual_information(j, sp.a, sp.b, sp.c);
      const double ref = cmi_reference(j, sp.a, sp.b, sp.c);
      CHECK(std::abs(lib - ref) < 1e-10);
      CHECK(lib >= 0.0);
    }
  }

  // independent product: zero information
  const JointDistribution prod({2, 3}, {"A", "B"},
                               {0.3 * 0.2, 0.3 * 0.5, 0.3 * 0.3, 0.7 * 0.2, 0.7 * 0.5, 0.7 * 0.3});
  CHECK(conditional_mutual_information(prod, {0}, {1}, {}) < 1e-12);

  const JointDistribution j = random_joint(9, {2, 2, 2});
  CHECK(conditional_mutual_information(j, {}, {1}, {2}) == 0.0);
  CHECK(error_code_of([&] { conditional_mutual_information(j, {0}, {0}, {1}); }) ==
        Errc::AxisOverlap);
  CHECK(error_code_of([&] { conditional_mutual_information(j, {0}, {5}, {}); }) ==
        Errc::IndexOutOfRange);
}

TEST_CASE("strategy channel matches the double-sum reference") {
  const Alphabets a{2, 2, 2, 2, 2, 3, 0};
  const FsMacChannel ch = testutil::random_channel(23, a);
  const StochasticKernel k = strategy_channel(ch);

  const StrategySpace spaceA(a.nXa, a.nSa);
  const StrategySpace spaceB(a.nXb, a.nSb);
  REQUIRE(k.rows() == spaceA.count() * spaceB.count() * a.nS);
  REQUIRE(k.cols() == a.nY);

  for (std::uint64_t tA = 0; tA < spaceA.count(); ++tA) {
    for (std::uint64_t tB = 0; tB < spaceB.count(); ++tB) {
      for (std::size_t s = 0; s < a.nS; ++s) {
        for (std::size_t y = 0; y < a.nY; ++y) {
          double want = 0.0;
          for (std::size_t sa = 0; sa < a.nSa; ++sa) {
            for (std::size_t sb = 0; sb < a.nSb; ++sb) {
              want += ch.csiA(s, sa) * ch.csiB(s, sb) *
                      ch.channel(ch.channelRow(spaceA.at(tA).apply(sa), spaceB.at(tB).apply(sb), s),
                                 y);
            }
          }
          const std::size_t row = (static_cast<std::size_t>(tA) * spaceB.count() + tB) * a.nS + s;
          CHECK(std::abs(k(row, y) - want) < 1e-15);
        }
      }
    }
  }
}

TEST_CASE("team joint distribution carries the right marginals") {
  const Alphabets a{2, 2, 2, 2, 2, 2, 0};
  const FsMacChannel ch = testutil::random_channel(31, a);
  fsmac::rng::Stream g(77, 1);
  const TeamPolicy pol =
      TeamPolicy::validated(fsmac::rng::dirichlet(g, 4), fsmac::rng::dirichlet(g, 4));

  const JointDistribution j = joint_distribution(ch, pol);
  CHECK(j.dims() == std::vector<std::size_t>{2, 4, 4, 2});
  CHECK(j.labels() == std::vector<std::string>{"S", "Ta", "Tb", "Y"});
  CHECK(std::abs(j.sum() - 1.0) < 1e-12);

  const auto ms = j.marginal({0}).flat();
  for (std::size_t s = 0; s < 2; ++s) CHECK(std::abs(ms[s] - ch.stateDist[s]) < 1e-12);
  const auto ma = j.marginal({1}).flat();
  for (std::size_t t = 0; t < 4; ++t) CHECK(std::abs(ma[t] - pol.piA[t]) < 1e-12);
  const auto mb = j.marginal({2}).flat();
  for (std::size_t t = 0; t < 4; ++t) CHECK(std::abs(mb[t] - pol.piB[t]) < 1e-12);

  CHECK(error_code_of([&] {
          rate_triple(ch, TeamPolicy::uniform(3, 4));
        }) == Errc::DimensionMismatch);
}

TEST_CASE("xor channel rates under uniform inputs") {
  const FsMacChannel ch = testutil::xor_channel();
  const RateTriple t = rate_triple(ch, TeamPolicy::uniform(2, 2));
  CHECK(std::abs(t.rA - 1.0) < 1e-12);
  CHECK(std::abs(t.rB - 1.0) < 1e-12);
  CHECK(std::abs(t.rSum - 1.0) < 1e-12);
}

TEST_CASE("rate triple agrees with the direct-sum reference") {
  const Alphabets a{2, 2, 1, 2, 2, 2, 0};
  const FsMacChannel ch = testutil::random_channel(5, a);
  fsmac::rng::Stream g(6, 2);
  const TeamPolicy pol =
      TeamPolicy::validated(fsmac::rng::dirichlet(g, 4), fsmac::rng::dirichlet(g, 2));
  const JointDistribution j = joint_distribution(ch, pol);
  const RateTriple t = rate_triple(ch, pol);
  CHECK(std::abs(t.rA - cmi_reference(j, {1}, {3}, {2, 0})) < 1e-10);
  CHECK(std::abs(t.rB - cmi_reference(j, {2}, {3}, {1, 0})) < 1e-10);
  CHECK(std::abs(t.rSum - cmi_reference(j, {1, 2}, {3}, {0})) < 1e-10);
  CHECK(t.rA + t.rB >= t.rSum - 1e-9);
}

TEST_CASE("cooperative rates") {
  const FsMacChannel ch = testutil::xor_channel();
  // uniform joint: both bounds a full bit
  const CooperativePolicy uni = CooperativePolicy::validated(2, 2, {0.25, 0.25, 0.25, 0.25});
  const RatePair p = cooperative_rate_pair(ch, uni);
  CHECK(std::abs(p.rB - 1.0) < 1e-12);
  CHECK(std::abs(p.rSum - 1.0) < 1e-12);

  // perfectly correlated pair: the output freezes and both rates vanish
  const CooperativePolicy diag = CooperativePolicy::validated(2, 2, {0.5, 0.0, 0.0, 0.5});
  const RatePair zero = cooperative_rate_pair(ch, diag);
  CHECK(zero.rB < 1e-12);
  CHECK(zero.rSum < 1e-12);

  // reference check on a random stateful channel, with and without receiver
  // knowledge in the conditioning set
  const FsMacChannel noisy = testutil::random_channel(8, Alphabets{2, 1, 2, 2, 2, 2, 0});
  fsmac::rng::Stream g(9, 3);
  const CooperativePolicy pol = CooperativePolicy::validated(2, 4, fsmac::rng::dirichlet(g, 8));
  const JointDistribution j = cooperative_joint(noisy, pol);
  CHECK(j.labels() == std::vector<std::string>{"S", "Xa", "Tb", "Y"});
  const RatePair withS = cooperative_rate_pair(noisy, pol, true);
  CHECK(std::abs(withS.rB - cmi_reference(j, {2}, {3}, {1, 0})) < 1e-10);
  CHECK(std::abs(withS.rSum - cmi_reference(j, {1, 2}, {3}, {0})) < 1e-10);
  const RatePair withoutS = cooperative_rate_pair(noisy, pol, false);
  CHECK(std::abs(withoutS.rB - cmi_reference(j, {2}, {3}, {1})) < 1e-10);
  CHECK(std::abs(withoutS.rSum - cmi_reference(j, {1, 2}, {3}, {})) < 1e-10);
  CHECK(withS.rSum >= withoutS.rSum - 1e-9);  // receiver knowledge cannot hurt

  CHECK(error_code_of([&] {
          cooperative_rate_pair(noisy, CooperativePolicy::validated(2, 2, {0.25, 0.25, 0.25, 0.25}));
        }) == Errc::DimensionMismatch);
}

TEST_CASE("conditioned inputs on the multiplier pin the closed-form rates") {
  const NoisyReceiverModel m = build_binary_multiplier(BinaryMultiplierSpec::validated(0.5, 0.1));
  // encoder a always sends one, encoder b splits evenly; the output then
  // carries exactly one bit about b per use minus the state uncertainty
  const ConditionedInputPolicy pol = ConditionedInputPolicy::validated(
      StochasticKernel(1, 2, {0.0, 1.0}), StochasticKernel::uniformRows(1, 2), {0, 0}, {0, 0});
  const RateTriple t = conditioned_input_rate_triple(m, pol);
  const double capacity = 1.0 - entropy(std::vector<double>{0.9, 0.1});
  CHECK(std::abs(t.rA) < 1e-12);
  CHECK(std::abs(t.rB - capacity) < 1e-12);
  CHECK(std::abs(t.rSum - capacity) < 1e-12);

  const JointDistribution j = conditioned_input_joint(m, pol);
  CHECK(j.labels() == std::vector<std::string>{"Sr", "Xa", "Xb", "Y"});
  const auto msr = j.marginal({0}).flat();
  CHECK(std::abs(msr[0] - 0.5) < 1e-12);

  CHECK(error_code_of([&] {
          conditioned_input_joint(
              m, ConditionedInputPolicy::validated(StochasticKernel(1, 2, {0.0, 1.0}),
                                                   StochasticKernel::uniformRows(1, 2), {0}, {0}));
        }) == Errc::DimensionMismatch);
}

TEST_CASE("deterministic observation maps equal the strategy view") {
  // model whose encoder observations are fixed functions of the receiver
  // symbol: evaluating input distributions per observation must match the
  // strategy formulation on the reduced channel exactly
  const std::vector<std::size_t> fA = {1, 0, 1};
  const std::vector<std::size_t> fB = {0, 1, 1};
  fsmac::rng::Stream g(12, 4);
  const Alphabets a{2, 2, 2, 2, 2, 2, 3};
  const NoisyReceiverModel model = NoisyReceiverModel::validated(
      a, fsmac::rng::dirichlet(g, 3), testutil::random_kernel(g, 3, 2),
      StochasticKernel::deterministic(3, 2, fA), StochasticKernel::deterministic(3, 2, fB),
      testutil::random_kernel(g, 8, 2));

  const StochasticKernel piA = testutil::random_kernel(g, 2, 2);
  const StochasticKernel piB = testutil::random_kernel(g, 2, 2);
  const RateTriple cond = conditioned_input_rate_triple(
      model, ConditionedInputPolicy::validated(piA, piB, fA, fB));

  // strategy weights: product of the per-observation input masses
  const FsMacChannel team = equivalent_channel(model);
  const StrategySpace spaceA(2, 2), spaceB(2, 2);
  std::vector<double> wA(4), wB(4);
  for (std::uint64_t t = 0; t < 4; ++t) {
    wA[t] = piA(0, spaceA.at(t).apply(0)) * piA(1, spaceA.at(t).apply(1));
    wB[t] = piB(0, spaceB.at(t).apply(0)) * piB(1, spaceB.at(t).apply(1));
  }
  const RateTriple viaStrategies = rate_triple(team, TeamPolicy::validated(wA, wB));

  CHECK(std::abs(cond.rA - viaStrategies.rA) < 1e-10);
  CHECK(std::abs(cond.rB - viaStrategies.rB) < 1e-10);
  CHECK(std::abs(cond.rSum - viaStrategies.rSum) < 1e-10);
}
