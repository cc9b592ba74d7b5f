// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and runtime budgets are pinned here on purpose.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "fsmac/channel.hpp"
#include "fsmac/distribution.hpp"
#include "fsmac/information.hpp"
#include "fsmac/io.hpp"
#include "fsmac/optimize.hpp"
#include "fsmac/regions.hpp"
#include "fsmac/rng.hpp"
#include "fsmac/simulate.hpp"
#include "helpers.hpp"

using namespace fsmac;

namespace {

constexpr double kClosedFormTol = 1e-6;
constexpr double kEntropyTol = 1e-9;
constexpr double kOracleLowerSlack = 1e-6;  // ascent may trail the coarse grid by this
constexpr double kOracleUpperSlack = 5e-3;  // and may beat the fine grid by this
constexpr double kPentagonTol = 1e-9;
constexpr double kHullTol = 1e-9;
constexpr double kDecompositionTol = 1e-10;
constexpr double kModuloSeconds = 5.0;
constexpr double kMultiplierSeconds = 1.0;
constexpr double kOracleSeconds = 60.0;

double h2(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

bool check(bool& pass, bool condition, const char* what) {
  if (!condition) {
    std::fprintf(stderr, "  failed: %s\n", what);
    pass = false;
  }
  return condition;
}

// Self-contained typicality reference for the decoder comparison: empirical
// per-symbol log probability of every nonempty coordinate subset within
// epsilon of the subset entropy, zero-probability symbols atypical.
struct SubsetTables {
  std::vector<std::size_t> dims;
  std::array<std::vector<double>, 16> marginal;
  std::array<double, 16> entropy{};

  explicit SubsetTables(const JointDistribution& joint) : dims(joint.dims()) {
    for (unsigned mask = 1; mask < 16; ++mask) {
      std::size_t size = 1;
      for (std::size_t ax = 0; ax < 4; ++ax) {
        if (mask & (1u << ax)) size *= dims[ax];
      }
      marginal[mask].assign(size, 0.0);
      std::size_t c[4];
      std::size_t cell = 0;
      for (c[0] = 0; c[0] < dims[0]; ++c[0]) {
        for (c[1] = 0; c[1] < dims[1]; ++c[1]) {
          for (c[2] = 0; c[2] < dims[2]; ++c[2]) {
            for (c[3] = 0; c[3] < dims[3]; ++c[3], ++cell) {
              marginal[mask][project(mask, c)] += joint.flat()[cell];
            }
          }
        }
      }
      for (double p : marginal[mask]) {
        if (p > 0.0) entropy[mask] -= p * std::log2(p);
      }
    }
  }

  std::size_t project(unsigned mask, const std::size_t* coord) const {
    std::size_t idx = 0;
    for (std::size_t ax = 0; ax < 4; ++ax) {
      if (mask & (1u << ax)) idx = idx * dims[ax] + coord[ax];
    }
    return idx;
  }

  bool typical(const std::vector<std::size_t>& s, const std::vector<std::size_t>& tA,
               const std::vector<std::size_t>& tB, const std::vector<std::size_t>& y,
               double epsilon) const {
    const std::size_t n = s.size();
    for (unsigned mask = 1; mask < 16; ++mask) {
      double logSum = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        const std::size_t coord[4] = {s[t], tA[t], tB[t], y[t]};
        const double p = marginal[mask][project(mask, coord)];
        if (p <= 0.0) return false;
        logSum += std::log2(p);
      }
      if (!(std::abs(-logSum / static_cast<double>(n) - entropy[mask]) < epsilon)) return false;
    }
    return true;
  }
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <channels-dir>\n", argv[0]);
    return 2;
  }
  const std::string channelsDir = argv[1];
  bool allPass = true;

  const auto run = [&](int index, const char* name, const std::function<bool()>& body) {
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    try {
      pass = body();
    } catch (const std::exception& e) {
      std::fprintf(stderr, "  exception: %s\n", e.what());
      pass = false;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d: %s (%.2f s)\n", pass ? "PASS" : "FAIL", index, name, seconds);
    allPass = allPass && pass;
    return seconds;
  };

  // 1. bundled modulo-additive instance: the sum-rate search and the uniform
  //    coset policy both hit log2 q minus the brute-force noise-entropy floor
  run(1, "modulo-additive family: search matches the closed form", [&] {
    bool pass = true;
    const auto start = std::chrono::steady_clock::now();
    const ChannelSpec spec = load_channel(channelsDir + "/modulo_q2.json");
    const auto* mod = std::get_if<ModuloAdditiveSpec>(&spec);
    if (!check(pass, mod != nullptr, "modulo_q2.json must hold a modulo_additive spec")) {
      return false;
    }
    const FsMacChannel channel = build_modulo_additive(*mod);
    const HMinResult hm = h_min_bruteforce(*mod);
    const double target = std::log2(static_cast<double>(mod->q)) - hm.hMin;

    const TeamSearchResult best = maximize_sum_rate(channel);
    check(pass, std::abs(best.value - target) <= kClosedFormTol,
          "ascent sum rate equals log2 q - Hmin");

    const TeamPolicy coset = uniform_coset_policy(*mod, hm.indexA, hm.indexB);
    const RateTriple triple = rate_triple(channel, coset);
    check(pass, std::abs(triple.rA - target) <= kClosedFormTol, "coset policy rate a");
    check(pass, std::abs(triple.rB - target) <= kClosedFormTol, "coset policy rate b");
    check(pass, std::abs(triple.rSum - target) <= kClosedFormTol, "coset policy sum rate");

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check(pass, seconds < kModuloSeconds, "runtime under five seconds");
    return pass;
  });

  // 2. binary multiplier closed form: all three bounds sit at 1 - h2(pR) and
  //    the pinned-input output entropies sit at one bit
  run(2, "binary multiplier: bounds and entropies match the closed form", [&] {
    bool pass = true;
    const auto start = std::chrono::steady_clock::now();
    const double target = 1.0 - h2(0.1);
    check(pass, std::abs(target - 0.5310044064107188) < 1e-12, "frozen closed-form value");

    const VerificationReport rep =
        verify_binary_multiplier(BinaryMultiplierSpec::validated(0.5, 0.1), {});
    check(pass, rep.passed, "verification report passed");
    check(pass, rep.checks.size() == 7, "report covers all seven checks");
    for (std::size_t i = 0; i < 3 && i < rep.checks.size(); ++i) {
      check(pass, std::abs(rep.checks[i].actual - 1.0) <= kEntropyTol,
            "pinned-input output entropy is one bit");
    }
    for (std::size_t i = 3; i < rep.checks.size(); ++i) {
      check(pass, std::abs(rep.checks[i].actual - target) <= kClosedFormTol,
            "bound equals 1 - h2(pR)");
    }

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check(pass, seconds < kMultiplierSeconds, "runtime under one second");
    return pass;
  });

  // 3. noisy receiver observation: optimizing through the scenario equals
  //    optimizing the explicitly reduced channel, bit for bit
  run(3, "noisy receiver scenario equals the reduced channel bit for bit", [&] {
    bool pass = true;
    const NoisyReceiverModel model =
        build_binary_multiplier(BinaryMultiplierSpec::validated(0.5, 0.1));
    ScenarioDescriptor noisy;
    noisy.kind = ScenarioKind::NoisyCsir;
    const ResolvedScenario rs = resolve_scenario(ChannelSpec{model}, noisy);
    check(pass, rs.team.has_value(), "scenario resolves to a plain channel");

    const OptimizerConfig cfg;
    const TeamSearchResult viaScenario = maximize_sum_rate(*rs.team, cfg);
    const TeamSearchResult viaReduction = maximize_sum_rate(equivalent_channel(model), cfg);
    check(pass, viaScenario.value == viaReduction.value, "sum rates are bit-identical");
    check(pass, viaScenario.policy.piA == viaReduction.policy.piA, "policies match exactly");
    check(pass, viaScenario.policy.piB == viaReduction.policy.piB, "policies match exactly");
    return pass;
  });

  // 4. on random tiny instances the ascent is sandwiched between the coarse
  //    and fine certified grid oracles
  run(4, "random tiny instances: ascent sandwiched by grid oracles", [&] {
    bool pass = true;
    const auto start = std::chrono::steady_clock::now();
    const std::array<Alphabets, 5> shapes{
        Alphabets{2, 2, 2, 2, 2, 2, 0}, Alphabets{2, 1, 2, 2, 2, 2, 0},
        Alphabets{2, 2, 1, 2, 2, 2, 0}, Alphabets{1, 1, 1, 2, 2, 2, 0},
        Alphabets{2, 2, 2, 2, 2, 2, 0}};
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      const FsMacChannel ch = testutil::random_channel(1001 + i, shapes[i]);
      const double ascent = maximize_sum_rate(ch).value;
      const double coarse = exhaustive_oracle_sum_rate(ch, 8).value;
      const double fine = exhaustive_oracle_sum_rate(ch, 16).value;
      check(pass, ascent >= coarse - kOracleLowerSlack, "ascent reaches the coarse grid");
      check(pass, ascent <= fine + kOracleUpperSlack, "ascent within slack of the fine grid");
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check(pass, seconds < kOracleSeconds, "runtime under sixty seconds");
    return pass;
  });

  // 5. random-coding behavior on the bundled modulo instance with its optimal
  //    policy: below capacity the error estimate falls with the block length,
  //    above capacity it stays near one
  run(5, "random-coding error decays below capacity and saturates above", [&] {
    bool pass = true;
    const ChannelSpec spec = load_channel(channelsDir + "/modulo_q2.json");
    const auto* mod = std::get_if<ModuloAdditiveSpec>(&spec);
    if (!check(pass, mod != nullptr, "modulo_q2.json must hold a modulo_additive spec")) {
      return false;
    }
    const FsMacChannel channel = build_modulo_additive(*mod);
    const HMinResult hm = h_min_bruteforce(*mod);
    const TeamPolicy policy = uniform_coset_policy(*mod, hm.indexA, hm.indexB);
    const double capacity = std::log2(static_cast<double>(mod->q)) - hm.hMin;

    SimulationParams params;
    params.epsilon = 0.05;
    params.trials = 200;
    params.rngSeed = 77;

    const auto errorAt = [&](std::size_t n, double factor) {
      SimulationParams p = params;
      p.n = n;
      p.rateA = 0.5 * factor * capacity;
      p.rateB = 0.5 * factor * capacity;
      return estimate_error(channel, policy, p).errorRate;
    };

    const double below200 = errorAt(200, 0.85);
    const double below600 = errorAt(600, 0.85);
    const double above600 = errorAt(600, 1.10);
    check(pass, below600 < below200, "85% of capacity: error falls from n=200 to n=600");
    check(pass, above600 > 0.9, "110% of capacity: error stays above 0.9 at n=600");
    return pass;
  });

  // 6. the all-pairs typicality decoder agrees exactly with an independent
  //    subset-entropy reference on 1000 random binary instances
  run(6, "typicality decoder agrees with the exhaustive reference", [&] {
    bool pass = true;
    std::uint64_t mismatches = 0;
    for (std::uint64_t seed = 0; seed < 1000 && mismatches == 0; ++seed) {
      const FsMacChannel ch =
          testutil::random_channel(20000 + seed, Alphabets{2, 1, 1, 2, 2, 2, 0});
      fsmac::rng::Stream g(seed, 0xACC6);
      const TeamPolicy policy =
          TeamPolicy::validated(fsmac::rng::dirichlet(g, 2), fsmac::rng::dirichlet(g, 2));
      const JointDistribution joint = joint_distribution(ch, policy);
      const TypicalityContext ctx(joint);
      const SubsetTables reference(joint);

      SimulationParams params;
      params.n = 1 + g.nextBelow(6);
      params.rateA = 0.3 + 0.35 * g.nextDouble();
      params.rateB = 0.3 + 0.35 * g.nextDouble();
      params.rngSeed = seed;
      const Codebooks books = generate_codebooks(policy, params);

      const double epsilon = 0.2 + 0.4 * g.nextDouble();
      std::vector<std::size_t> s(params.n), y(params.n);
      for (std::size_t t = 0; t < params.n; ++t) {
        s[t] = g.nextBelow(2);
        y[t] = g.nextBelow(2);
      }
      const DecodeOutcome got = joint_typicality_decode(books, y, s, epsilon, ctx);

      std::uint64_t passing = 0, refA = 0, refB = 0;
      std::vector<std::size_t> tA(params.n), tB(params.n);
      for (std::uint64_t wA = 0; wA < books.countA; ++wA) {
        for (std::size_t t = 0; t < params.n; ++t) tA[t] = books.bookA[wA * params.n + t];
        for (std::uint64_t wB = 0; wB < books.countB; ++wB) {
          for (std::size_t t = 0; t < params.n; ++t) tB[t] = books.bookB[wB * params.n + t];
          if (reference.typical(s, tA, tB, y, epsilon)) {
            ++passing;
            refA = wA;
            refB = wB;
          }
        }
      }
      const bool same = got.passingPairs == passing &&
                        (passing != 1 || (got.wA == refA && got.wB == refB));
      if (!same) ++mismatches;
    }
    check(pass, mismatches == 0, "decoder and reference agree on every instance");
    return pass;
  });

  // 7. pentagon inequality on 1000 random policies, and the hull spanned by
  //    their pentagons contains every one of their corners
  run(7, "pentagon inequality and hull containment on random policies", [&] {
    bool pass = true;
    for (std::uint64_t c = 0; c < 10; ++c) {
      const FsMacChannel ch = testutil::random_channel(30000 + c, Alphabets{2, 2, 1, 2, 2, 2, 0});
      fsmac::rng::Stream g(c, 0xACC7);
      std::vector<RateTriple> triples;
      std::vector<RegionPoint> cloud{{0.0, 0.0}};
      for (int k = 0; k < 100; ++k) {
        const TeamPolicy pol =
            TeamPolicy::validated(fsmac::rng::dirichlet(g, 4), fsmac::rng::dirichlet(g, 2));
        const RateTriple t = rate_triple(ch, pol);
        check(pass, t.rA + t.rB >= t.rSum - kPentagonTol, "rA + rB >= rSum - 1e-9");
        triples.push_back(t);
        for (const RegionPoint& p : pentagon_corners(t)) cloud.push_back(p);
      }
      const std::vector<RegionPoint> hull = convex_hull_2d(cloud);
      for (const RateTriple& t : triples) {
        for (const RegionPoint& p : pentagon_corners(t)) {
          check(pass, hull_contains(hull, p, kHullTol), "hull contains every pentagon corner");
        }
      }
    }
    return pass;
  });

  // 8. auxiliary-variable form of the joint-encoding region on a binary
  //    instance, plus the binary-stochastic decomposition behind it
  run(8, "auxiliary form of the joint-encoding region and its decomposition", [&] {
    bool pass = true;
    const FsMacChannel ch = testutil::random_channel(4242, Alphabets{2, 1, 2, 2, 2, 2, 0});
    const VerificationReport rep = verify_auxiliary_equivalence(ch, 10000, {});
    check(pass, rep.passed, "sampled equivalence report passed");
    check(pass, rep.checks.size() == 4, "report covers all four checks");
    if (rep.checks.size() == 4) {
      check(pass, rep.checks[0].tolerance == 1e-6, "containment tolerance pinned at 1e-6");
      check(pass, rep.checks[1].tolerance == 1e-4, "matching tolerance pinned at 1e-4");
    }

    fsmac::rng::Stream g(99, 0xACC8);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t rows = 2 + g.nextBelow(3);
      const std::size_t cols = 2 + g.nextBelow(3);
      const StochasticKernel m = testutil::random_kernel(g, rows, cols);
      const std::vector<BinaryStochasticTerm> terms = decompose_row_stochastic(m);
      check(pass, terms.size() <= rows * cols, "term count bounded by rows * cols");
      std::vector<double> rebuilt(rows * cols, 0.0);
      for (const BinaryStochasticTerm& t : terms) {
        for (std::size_t r = 0; r < rows; ++r) rebuilt[r * cols + t.pick[r]] += t.weight;
      }
      double worst = 0.0;
      for (std::size_t i = 0; i < rebuilt.size(); ++i) {
        worst = std::max(worst, std::abs(rebuilt[i] - m.flat()[i]));
      }
      check(pass, worst <= kDecompositionTol, "decomposition reconstructs the matrix");
    }
    return pass;
  });

  std::printf("acceptance: %s\n", allPass ? "PASS" : "FAIL");
  return allPass ? 0 : 1;
}
