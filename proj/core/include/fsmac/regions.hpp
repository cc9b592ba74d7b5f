#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fsmac/channel.hpp"
#include "fsmac/information.hpp"
#include "fsmac/kernel.hpp"
#include "fsmac/optimize.hpp"

namespace fsmac {

enum class ScenarioKind {
  CausalNoisyCsitFullCsir,  // encoders see noisy causal CSI, receiver sees the state
  NoisyCsir,                // receiver sees a noisy observation; handled via the reduced channel
  DeterministicCsitOfCsir,  // encoder CSI is a fixed function of the receiver observation
  Delayed,                  // encoder CSI arrives late; worthless under i.i.d. states
  Cooperative,              // encoder b knows encoder a's message; receiver sees the state
  CooperativeNoisyCsir,     // cooperative with a noisy receiver observation
};

const char* scenario_name(ScenarioKind kind) noexcept;
ScenarioKind scenario_from_name(const std::string& name);  // throws ParseError

struct ScenarioDescriptor {
  ScenarioKind kind = ScenarioKind::CausalNoisyCsitFullCsir;
  // Delays are recorded for reporting only: with i.i.d. states, stale CSI
  // carries no rate, so the formulas never consume these.
  std::size_t delayA = 0;
  std::size_t delayB = 0;
  // Observation maps for DeterministicCsitOfCsir; empty means identity.
  std::vector<std::size_t> fA;
  std::vector<std::size_t> fB;
};

// Every supported (model kind, scenario) pair lands on one of two
// computational forms: an independent/cooperative run on a plain channel, or
// a per-observation-input run on a noisy-receiver model.
struct ResolvedScenario {
  ScenarioKind kind = ScenarioKind::CausalNoisyCsitFullCsir;
  bool cooperative = false;
  std::optional<FsMacChannel> team;
  std::optional<NoisyReceiverModel> conditioned;
  std::vector<std::size_t> fA;
  std::vector<std::size_t> fB;
};

ResolvedScenario resolve_scenario(const ChannelSpec& spec, const ScenarioDescriptor& scenario);

struct RegionPoint {
  double rA = 0.0;
  double rB = 0.0;
};

struct PentagonEntry {
  double lambda = 0.0;
  RateTriple rates;
  std::string source;  // which search family produced this policy
};

struct RateRegion {
  std::vector<RegionPoint> hullPoints;  // counterclockwise, no interior or collinear points
  std::vector<PentagonEntry> pentagons;
  std::optional<double> outerSumRate;
};

std::vector<double> default_lambdas(std::size_t count = 33);

// The five corners cut by rA, rB, and rSum caps (with clamping so degenerate
// triples still give a valid polygon). Cooperative entries store rA = rSum,
// which turns the pentagon into the intended quadrilateral.
std::vector<RegionPoint> pentagon_corners(const RateTriple& rates);

RateRegion inner_bound_region(const ChannelSpec& spec, const ScenarioDescriptor& scenario,
                              const std::vector<double>& lambdaSamples,
                              const OptimizerConfig& config);

double outer_sum_rate(const ChannelSpec& spec, const ScenarioDescriptor& scenario,
                      const OptimizerConfig& config);

// Monotone-chain hull, counterclockwise, deduplicated, collinear edge points
// dropped. Deterministic for any input order (points are sorted first).
std::vector<RegionPoint> convex_hull_2d(std::vector<RegionPoint> points);

// Greatest distance by which the point falls outside the hull (0 if inside).
double hull_violation(const std::vector<RegionPoint>& hull, const RegionPoint& p);
bool hull_contains(const std::vector<RegionPoint>& hull, const RegionPoint& p,
                   double tolerance = 1e-9);

// CSV with header "lambda,Ra,Rb,Rsum,source": one row per pentagon corner.
std::string region_corners_csv(const RateRegion& region);
// CSV with header "Ra,Rb": one row per hull vertex.
std::string hull_csv(const RateRegion& region);

struct VerificationCheck {
  std::string name;
  bool passed = false;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
};

struct VerificationReport {
  std::string title;
  bool passed = true;
  std::vector<VerificationCheck> checks;

  void add(std::string name, double expected, double actual, double tolerance);
  std::string text() const;
};

// Closed-form check for the modulo-additive family: brute-force H_min, the
// uniform coset policy hitting (log2 q - H_min) on all three bounds, and the
// ascent search agreeing with the same value.
VerificationReport verify_modulo_example(const ModuloAdditiveSpec& spec,
                                         const OptimizerConfig& config);

// Closed-form check for the binary multiplier: the three hand policies pin
// the relevant output entropies at 1 bit and every bound at 1 - H(S|Sr).
VerificationReport verify_binary_multiplier(const BinaryMultiplierSpec& spec,
                                            const OptimizerConfig& config);

// Two-sided sampled equivalence between the auxiliary-variable form of the
// cooperative region (joint weights over (xA, u) plus a deterministic map
// into inputs of b) and the strategy form, plus the binary-stochastic
// decomposition that makes the two forms interchangeable. Requires an
// uninformed encoder a and alphabets small enough to enumerate every map.
VerificationReport verify_auxiliary_equivalence(const FsMacChannel& channel,
                                                std::uint64_t sampleBudget,
                                                const OptimizerConfig& config);

// One term of a convex combination of binary stochastic matrices:
// weight * M where M has a single 1 per row, at column pick[row].
struct BinaryStochasticTerm {
  double weight = 0.0;
  std::vector<std::size_t> pick;
};

// Greedy peeling; terms.size() <= rows * cols and the weighted sum of the
// terms reproduces the input matrix.
std::vector<BinaryStochasticTerm> decompose_row_stochastic(const StochasticKernel& matrix);

}  // namespace fsmac
