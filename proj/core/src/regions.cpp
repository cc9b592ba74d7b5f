#include "fsmac/regions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <utility>

#include "fsmac/distribution.hpp"
#include "fsmac/errors.hpp"
#include "fsmac/parallel.hpp"
#include "fsmac/rng.hpp"
#include "fsmac/strategy.hpp"

namespace fsmac {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double cross(const RegionPoint& o, const RegionPoint& a, const RegionPoint& b) {
  return (a.rA - o.rA) * (b.rB - o.rB) - (a.rB - o.rB) * (b.rA - o.rA);
}

}  // namespace

const char* scenario_name(ScenarioKind kind) noexcept {
  switch (kind) {
    case ScenarioKind::CausalNoisyCsitFullCsir: return "causal_noisy_csit_full_csir";
    case ScenarioKind::NoisyCsir: return "noisy_csir";
    case ScenarioKind::DeterministicCsitOfCsir: return "deterministic_csit_of_csir";
    case ScenarioKind::Delayed: return "delayed";
    case ScenarioKind::Cooperative: return "cooperative";
    case ScenarioKind::CooperativeNoisyCsir: return "cooperative_noisy_csir";
  }
  return "unknown";
}

ScenarioKind scenario_from_name(const std::string& name) {
  for (ScenarioKind k :
       {ScenarioKind::CausalNoisyCsitFullCsir, ScenarioKind::NoisyCsir,
        ScenarioKind::DeterministicCsitOfCsir, ScenarioKind::Delayed, ScenarioKind::Cooperative,
        ScenarioKind::CooperativeNoisyCsir}) {
    if (name == scenario_name(k)) return k;
  }
  fail(Errc::ParseError, "unknown scenario '" + name + "'");
}

namespace {

[[noreturn]] void mismatch(ScenarioKind kind, const char* why) {
  fail(Errc::ScenarioMismatch, std::string(scenario_name(kind)) + ": " + why);
}

std::vector<std::size_t> resolve_map(std::vector<std::size_t> f, std::size_t nSr,
                                     ScenarioKind kind) {
  if (f.empty()) {
    f.resize(nSr);
    for (std::size_t i = 0; i < nSr; ++i) f[i] = i;
    return f;
  }
  if (f.size() != nSr) mismatch(kind, "observation map must have one entry per receiver symbol");
  return f;
}

}  // namespace

ResolvedScenario resolve_scenario(const ChannelSpec& spec, const ScenarioDescriptor& scenario) {
  ResolvedScenario out;
  out.kind = scenario.kind;

  auto asPlain = [&](const ChannelSpec& s) -> FsMacChannel {
    if (const auto* ch = std::get_if<FsMacChannel>(&s)) return *ch;
    if (const auto* mod = std::get_if<ModuloAdditiveSpec>(&s)) return build_modulo_additive(*mod);
    mismatch(scenario.kind, "this scenario needs a model whose receiver sees the state");
  };
  auto asNoisy = [&](const ChannelSpec& s) -> NoisyReceiverModel {
    if (const auto* m = std::get_if<NoisyReceiverModel>(&s)) return *m;
    if (const auto* b = std::get_if<BinaryMultiplierSpec>(&s)) return build_binary_multiplier(*b);
    mismatch(scenario.kind, "this scenario needs a noisy-receiver model");
  };

  switch (scenario.kind) {
    case ScenarioKind::CausalNoisyCsitFullCsir:
      out.team = asPlain(spec);
      break;
    case ScenarioKind::NoisyCsir:
      out.team = equivalent_channel(asNoisy(spec));
      break;
    case ScenarioKind::DeterministicCsitOfCsir: {
      NoisyReceiverModel model = asNoisy(spec);
      const std::size_t nSr = model.alphabets.nSr;
      out.fA = resolve_map(scenario.fA, nSr, scenario.kind);
      out.fB = resolve_map(scenario.fB, nSr, scenario.kind);
      out.conditioned = std::move(model);
      break;
    }
    case ScenarioKind::Delayed:
      out.team = strip_encoder_csi(asPlain(spec));
      break;
    case ScenarioKind::Cooperative: {
      FsMacChannel ch = asPlain(spec);
      if (ch.alphabets.nSa != 1) {
        mismatch(scenario.kind, "encoder a must be uninformed (single observation symbol)");
      }
      out.cooperative = true;
      out.team = std::move(ch);
      break;
    }
    case ScenarioKind::CooperativeNoisyCsir: {
      FsMacChannel reduced = equivalent_channel(asNoisy(spec));
      if (reduced.alphabets.nSa != 1) {
        mismatch(scenario.kind, "encoder a must be uninformed (single observation symbol)");
      }
      out.cooperative = true;
      out.team = std::move(reduced);
      break;
    }
  }
  return out;
}

std::vector<double> default_lambdas(std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {0.5};
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return out;
}

std::vector<RegionPoint> pentagon_corners(const RateTriple& rates) {
  const double sum = std::max(0.0, rates.rSum);
  const double vA = std::min(std::max(0.0, rates.rA), sum);
  const double vB = std::min(std::max(0.0, rates.rB), sum);
  return {{0.0, 0.0}, {vA, 0.0}, {vA, sum - vA}, {sum - vB, vB}, {0.0, vB}};
}

RateRegion inner_bound_region(const ChannelSpec& spec, const ScenarioDescriptor& scenario,
                              const std::vector<double>& lambdaSamples,
                              const OptimizerConfig& config) {
  const ResolvedScenario rs = resolve_scenario(spec, scenario);
  RateRegion region;
  region.pentagons.resize(lambdaSamples.size());

  OptimizerConfig perSample = config;
  perSample.threads = 1;  // the lambda sweep is the parallel axis

  parallel_for(lambdaSamples.size(), config.threads, [&](std::size_t i) {
    const double lambda = lambdaSamples[i];
    PentagonEntry& entry = region.pentagons[i];
    entry.lambda = lambda;
    if (rs.conditioned) {
      const ConditionedSearchResult r =
          maximize_conditioned_rate(*rs.conditioned, rs.fA, rs.fB, lambda, perSample);
      entry.rates = r.rates;
      entry.source = "observation_conditioned";
    } else if (rs.cooperative) {
      const CooperativeSearchResult r = maximize_cooperative(*rs.team, lambda, perSample, true);
      entry.rates = RateTriple{r.rates.rSum, r.rates.rB, r.rates.rSum};
      entry.source = "cooperative";
    } else {
      const TeamSearchResult r = maximize_weighted_rate(*rs.team, lambda, perSample);
      entry.rates = r.rates;
      entry.source = "independent";
    }
  });

  std::vector<RegionPoint> pts{{0.0, 0.0}};
  for (const PentagonEntry& e : region.pentagons) {
    const std::vector<RegionPoint> corners = pentagon_corners(e.rates);
    pts.insert(pts.end(), corners.begin(), corners.end());
  }
  region.hullPoints = convex_hull_2d(std::move(pts));
  return region;
}

double outer_sum_rate(const ChannelSpec& spec, const ScenarioDescriptor& scenario,
                      const OptimizerConfig& config) {
  const ResolvedScenario rs = resolve_scenario(spec, scenario);
  if (rs.conditioned) {
    return maximize_conditioned_rate(*rs.conditioned, rs.fA, rs.fB, 0.5, config).rates.rSum;
  }
  if (rs.cooperative) {
    return maximize_cooperative(*rs.team, 1.0, config, true).value;
  }
  return maximize_sum_rate(*rs.team, config).value;
}

std::vector<RegionPoint> convex_hull_2d(std::vector<RegionPoint> points) {
  if (points.empty()) fail(Errc::DimensionMismatch, "hull needs at least one point");
  for (const RegionPoint& p : points) {
    if (!std::isfinite(p.rA) || !std::isfinite(p.rB)) {
      fail(Errc::NonFinitePoint, "non-finite coordinate in hull input");
    }
  }
  std::sort(points.begin(), points.end(), [](const RegionPoint& a, const RegionPoint& b) {
    return a.rA < b.rA || (a.rA == b.rA && a.rB < b.rB);
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const RegionPoint& a, const RegionPoint& b) {
                             return a.rA == b.rA && a.rB == b.rB;
                           }),
               points.end());
  const std::size_t n = points.size();
  if (n <= 2) return points;

  std::vector<RegionPoint> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= 1e-12) --k;
    hull[k++] = points[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
    while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 1e-12) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);  // last point repeats the first
  return hull;
}

double hull_violation(const std::vector<RegionPoint>& hull, const RegionPoint& p) {
  if (hull.empty()) return std::numeric_limits<double>::infinity();
  if (hull.size() == 1) {
    return std::hypot(p.rA - hull[0].rA, p.rB - hull[0].rB);
  }
  if (hull.size() == 2) {
    // distance to the segment
    const double ex = hull[1].rA - hull[0].rA;
    const double ey = hull[1].rB - hull[0].rB;
    const double len2 = ex * ex + ey * ey;
    if (len2 == 0.0) return std::hypot(p.rA - hull[0].rA, p.rB - hull[0].rB);
    double t = ((p.rA - hull[0].rA) * ex + (p.rB - hull[0].rB) * ey) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.rA - (hull[0].rA + t * ex), p.rB - (hull[0].rB + t * ey));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const RegionPoint& a = hull[i];
    const RegionPoint& b = hull[(i + 1) % hull.size()];
    const double len = std::hypot(b.rA - a.rA, b.rB - a.rB);
    if (len == 0.0) continue;
    const double signedDist = cross(a, b, p) / len;  // >= 0 means inside for a CCW hull
    worst = std::max(worst, -signedDist);
  }
  return worst;
}

bool hull_contains(const std::vector<RegionPoint>& hull, const RegionPoint& p, double tolerance) {
  return hull_violation(hull, p) <= tolerance;
}

std::string region_corners_csv(const RateRegion& region) {
  std::ostringstream os;
  os << "lambda,Ra,Rb,Rsum,source\n";
  for (const PentagonEntry& e : region.pentagons) {
    for (const RegionPoint& c : pentagon_corners(e.rates)) {
      os << fmt17(e.lambda) << ',' << fmt17(c.rA) << ',' << fmt17(c.rB) << ','
         << fmt17(e.rates.rSum) << ',' << e.source << '\n';
    }
  }
  return os.str();
}

std::string hull_csv(const RateRegion& region) {
  std::ostringstream os;
  os << "Ra,Rb\n";
  for (const RegionPoint& p : region.hullPoints) {
    os << fmt17(p.rA) << ',' << fmt17(p.rB) << '\n';
  }
  return os.str();
}

void VerificationReport::add(std::string name, double expected, double actual, double tolerance) {
  VerificationCheck c;
  c.name = std::move(name);
  c.expected = expected;
  c.actual = actual;
  c.tolerance = tolerance;
  c.passed = std::isfinite(actual) && std::abs(actual - expected) <= tolerance;
  passed = passed && c.passed;
  checks.push_back(std::move(c));
}

std::string VerificationReport::text() const {
  std::ostringstream os;
  os << title << '\n';
  for (const VerificationCheck& c : checks) {
    os << (c.passed ? "  PASS " : "  FAIL ") << c.name << ": expected " << fmt17(c.expected)
       << ", got " << fmt17(c.actual) << " (tolerance " << fmt17(c.tolerance) << ")\n";
  }
  os << (passed ? "PASS" : "FAIL") << '\n';
  return os.str();
}

VerificationReport verify_modulo_example(const ModuloAdditiveSpec& spec,
                                         const OptimizerConfig& config) {
  VerificationReport rep;
  rep.title = "modulo-additive closed form";

  const HMinResult hm = h_min_bruteforce(spec);
  const double target = std::log2(static_cast<double>(spec.q)) - hm.hMin;
  const FsMacChannel channel = build_modulo_additive(spec);
  const TeamPolicy coset = uniform_coset_policy(spec, hm.indexA, hm.indexB);
  const RateTriple triple = rate_triple(channel, coset);

  rep.add("uniform coset policy bound on rate a", target, triple.rA, 1e-6);
  rep.add("uniform coset policy bound on rate b", target, triple.rB, 1e-6);
  rep.add("uniform coset policy bound on the sum rate", target, triple.rSum, 1e-6);

  const TeamSearchResult best = maximize_sum_rate(channel, config);
  rep.add("ascent sum rate equals alphabet log minus minimal noise entropy", target, best.value,
          1e-6);
  return rep;
}

VerificationReport verify_binary_multiplier(const BinaryMultiplierSpec& spec,
                                            const OptimizerConfig& config) {
  VerificationReport rep;
  rep.title = "binary multiplier closed form";

  const NoisyReceiverModel model = build_binary_multiplier(spec);
  const FsMacChannel reduced = equivalent_channel(model);

  double hStateGivenObs = 0.0;
  for (std::size_t sr = 0; sr < model.alphabets.nSr; ++sr) {
    hStateGivenObs += model.srDist[sr] * entropy(model.stateGivenSr.row(sr));
  }
  const double target = 1.0 - hStateGivenObs;

  // Encoders are uninformed here, so a strategy is just an input letter and
  // the optimal hand policies are plain input distributions. The product
  // input must be equiprobable for the output to look uniform past the
  // observation, so one encoder is pinned to 1 and the other left uniform
  // (uniform-both would put only 1/4 mass on the product being 1).
  const TeamPolicy pinAOn = TeamPolicy::validated({0.0, 1.0}, {0.5, 0.5});
  const TeamPolicy pinBOn = TeamPolicy::validated({0.5, 0.5}, {0.0, 1.0});

  const JointDistribution j2 = joint_distribution(reduced, pinAOn);
  const JointDistribution j3 = joint_distribution(reduced, pinBOn);

  // axes: 0 = receiver observation, 1 = input a, 2 = input b, 3 = output
  const double hY1 = entropy_of(j2, {0, 3}) - entropy_of(j2, {0});
  const double hY2 = entropy_of(j2, {0, 1, 3}) - entropy_of(j2, {0, 1});
  const double hY3 = entropy_of(j3, {0, 2, 3}) - entropy_of(j3, {0, 2});
  rep.add("input a pinned to 1: output entropy given the observation", 1.0, hY1, 1e-9);
  rep.add("input a pinned to 1: output entropy given (a, observation)", 1.0, hY2, 1e-9);
  rep.add("input b pinned to 1: output entropy given (b, observation)", 1.0, hY3, 1e-9);

  rep.add("input a pinned to 1: sum bound", target, rate_triple(reduced, pinAOn).rSum, 1e-6);
  rep.add("input a pinned to 1: rate-b bound", target, rate_triple(reduced, pinAOn).rB, 1e-6);
  rep.add("input b pinned to 1: rate-a bound", target, rate_triple(reduced, pinBOn).rA, 1e-6);

  const TeamSearchResult best = maximize_sum_rate(reduced, config);
  rep.add("ascent sum rate", target, best.value, 1e-6);
  return rep;
}

namespace {

// Joint law of (Xa, U, Y) given joint weights on (xA, u) and a map sending
// each (xA, u) to an encoder-b strategy applied to b's observation.
RatePair auxiliary_rate_pair(const FsMacChannel& ch, const std::vector<double>& weightXaU,
                             const std::vector<std::size_t>& mapToStrategy, std::size_t nU,
                             const std::vector<std::size_t>& tabB) {
  const Alphabets& a = ch.alphabets;
  std::vector<double> probs(a.nXa * nU * a.nY, 0.0);
  for (std::size_t xA = 0; xA < a.nXa; ++xA) {
    for (std::size_t u = 0; u < nU; ++u) {
      const double w = weightXaU[xA * nU + u];
      const std::size_t tB = mapToStrategy[xA * nU + u];
      double* dst = probs.data() + (xA * nU + u) * a.nY;
      for (std::size_t s = 0; s < a.nS; ++s) {
        const double ps = ch.stateDist[s];
        if (ps == 0.0) continue;
        for (std::size_t sb = 0; sb < a.nSb; ++sb) {
          const double wb = ch.csiB(s, sb);
          if (wb == 0.0) continue;
          auto row = ch.channel.row(ch.channelRow(xA, tabB[tB * a.nSb + sb], s));
          for (std::size_t y = 0; y < a.nY; ++y) dst[y] += w * ps * wb * row[y];
        }
      }
    }
  }
  JointDistribution joint({a.nXa, nU, a.nY}, {"Xa", "U", "Y"}, std::move(probs));
  RatePair out;
  out.rB = conditional_mutual_information(joint, {1}, {2}, {0});
  out.rSum = conditional_mutual_information(joint, {0, 1}, {2}, {});
  return out;
}

}  // namespace

VerificationReport verify_auxiliary_equivalence(const FsMacChannel& channel,
                                                std::uint64_t sampleBudget,
                                                const OptimizerConfig& config) {
  const Alphabets& a = channel.alphabets;
  if (a.nSa != 1) {
    fail(Errc::ScenarioMismatch, "auxiliary equivalence needs an uninformed encoder a");
  }
  if (a.nS > 2 || a.nXa > 2 || a.nXb > 2 || a.nSb > 2) {
    fail(Errc::EnumerationLimitExceeded,
         "auxiliary equivalence check only enumerates binary-scale instances");
  }

  VerificationReport rep;
  rep.title = "auxiliary form vs strategy form, cooperative region";

  StrategySpace spaceB(a.nXb, a.nSb);
  const std::size_t nTb = static_cast<std::size_t>(spaceB.count());
  const std::size_t nU = nTb;  // one auxiliary symbol per encoder-b strategy
  const std::vector<std::size_t> tabB = spaceB.outputTable();

  // Strategy-form boundary: per support direction, optimal value and policy.
  const std::vector<double> lambdas = default_lambdas(33);
  std::vector<CooperativeSearchResult> supports(lambdas.size());
  OptimizerConfig perSample = config;
  perSample.threads = 1;
  parallel_for(lambdas.size(), config.threads, [&](std::size_t i) {
    supports[i] = maximize_cooperative(channel, lambdas[i], perSample, false);
  });

  std::vector<RegionPoint> cornerCloud{{0.0, 0.0}};
  for (const CooperativeSearchResult& r : supports) {
    const RateTriple embedded{r.rates.rSum, r.rates.rB, r.rates.rSum};
    for (const RegionPoint& c : pentagon_corners(embedded)) cornerCloud.push_back(c);
  }
  const std::vector<RegionPoint> hull = convex_hull_2d(cornerCloud);

  // Part one: sampled auxiliary pairs stay inside the strategy-form region.
  // Containment is tested against the sampled support directions, which is
  // the hull test robust to the finite lambda grid.
  std::uint64_t mapCount = 1;
  const std::size_t mapSlots = a.nXa * nU;
  for (std::size_t i = 0; i < mapSlots; ++i) {
    if (mapCount > (1ull << 20) / nTb) {
      fail(Errc::EnumerationLimitExceeded, "too many auxiliary maps to enumerate");
    }
    mapCount *= nTb;
  }
  const std::uint64_t checks = std::max<std::uint64_t>(sampleBudget, mapCount);

  rng::Stream sampler(config.rngSeed, 0xA11, 0);
  double worstContainment = 0.0;
  std::vector<std::size_t> mapToStrategy(mapSlots);
  for (std::uint64_t k = 0; k < checks; ++k) {
    std::uint64_t code = k % mapCount;
    for (std::size_t i = 0; i < mapSlots; ++i) {
      mapToStrategy[i] = static_cast<std::size_t>(code % nTb);
      code /= nTb;
    }
    const std::vector<double> weights = rng::dirichlet(sampler, mapSlots);
    const RatePair aux = auxiliary_rate_pair(channel, weights, mapToStrategy, nU, tabB);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const double functional =
          lambdas[i] * aux.rSum + std::max(0.0, 1.0 - 2.0 * lambdas[i]) * aux.rB;
      worstContainment = std::max(worstContainment, functional - supports[i].value);
    }
  }
  rep.add("max support-direction excess of sampled auxiliary pairs", 0.0, worstContainment, 1e-6);

  // Part two: every strategy-form hull vertex is reproduced by an auxiliary
  // pair (the canonical embedding u <-> strategy of b).
  std::vector<RegionPoint> auxCorners{{0.0, 0.0}};
  std::vector<std::size_t> canonicalMap(mapSlots);
  for (std::size_t xA = 0; xA < a.nXa; ++xA) {
    for (std::size_t u = 0; u < nU; ++u) canonicalMap[xA * nU + u] = u;
  }
  for (const CooperativeSearchResult& r : supports) {
    const RatePair aux = auxiliary_rate_pair(channel, r.policy.piJoint, canonicalMap, nU, tabB);
    const RateTriple embedded{aux.rSum, aux.rB, aux.rSum};
    for (const RegionPoint& c : pentagon_corners(embedded)) auxCorners.push_back(c);
  }
  double worstVertexGap = 0.0;
  for (const RegionPoint& v : hull) {
    double best = std::numeric_limits<double>::infinity();
    for (const RegionPoint& c : auxCorners) {
      best = std::min(best, std::hypot(v.rA - c.rA, v.rB - c.rB));
    }
    worstVertexGap = std::max(worstVertexGap, best);
  }
  rep.add("max distance from a hull vertex to its auxiliary match", 0.0, worstVertexGap, 1e-4);

  // Part three: the decomposition that lets a stochastic map stand in for a
  // mixture of deterministic ones.
  rng::Stream matrixStream(config.rngSeed, 0xA11, 1);
  double worstReconstruction = 0.0;
  double worstExcessTerms = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t rows = 2 + static_cast<std::size_t>(matrixStream.nextBelow(3));
    const std::size_t cols = 2 + static_cast<std::size_t>(matrixStream.nextBelow(3));
    std::vector<double> cells;
    cells.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
      const std::vector<double> row = rng::dirichlet(matrixStream, cols);
      cells.insert(cells.end(), row.begin(), row.end());
    }
    const StochasticKernel matrix(rows, cols, cells);
    const std::vector<BinaryStochasticTerm> terms = decompose_row_stochastic(matrix);
    worstExcessTerms = std::max(
        worstExcessTerms, static_cast<double>(terms.size()) - static_cast<double>(rows * cols));
    std::vector<double> rebuilt(rows * cols, 0.0);
    for (const BinaryStochasticTerm& t : terms) {
      for (std::size_t r = 0; r < rows; ++r) rebuilt[r * cols + t.pick[r]] += t.weight;
    }
    for (std::size_t i = 0; i < rows * cols; ++i) {
      worstReconstruction = std::max(worstReconstruction, std::abs(rebuilt[i] - cells[i]));
    }
  }
  rep.add("max reconstruction error of the binary-stochastic decomposition", 0.0,
          worstReconstruction, 1e-10);
  rep.add("decomposition term count beyond rows*cols", 0.0, worstExcessTerms, 0.5);

  return rep;
}

std::vector<BinaryStochasticTerm> decompose_row_stochastic(const StochasticKernel& matrix) {
  const std::size_t rows = matrix.rows();
  const std::size_t cols = matrix.cols();
  std::vector<double> rest = matrix.flat();
  std::vector<BinaryStochasticTerm> terms;

  double remaining = 1.0;
  while (remaining > 1e-14 && terms.size() < rows * cols) {
    BinaryStochasticTerm term;
    term.pick.resize(rows);
    double weight = remaining;
    for (std::size_t r = 0; r < rows; ++r) {
      std::size_t arg = 0;
      for (std::size_t c = 1; c < cols; ++c) {
        if (rest[r * cols + c] > rest[r * cols + arg]) arg = c;
      }
      term.pick[r] = arg;
      weight = std::min(weight, rest[r * cols + arg]);
    }
    if (weight <= 0.0) break;
    for (std::size_t r = 0; r < rows; ++r) rest[r * cols + term.pick[r]] -= weight;
    term.weight = weight;
    remaining -= weight;
    terms.push_back(std::move(term));
  }
  return terms;
}

}  // namespace fsmac
