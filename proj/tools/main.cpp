// Command-line front end: model files in, reports and CSV artifacts out.
// Exit codes: 0 success/pass, 1 I/O, 2 validation, 3 numerical consistency,
// 4 verification failure.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fsmac/channel.hpp"
#include "fsmac/errors.hpp"
#include "fsmac/information.hpp"
#include "fsmac/io.hpp"
#include "fsmac/optimize.hpp"
#include "fsmac/regions.hpp"
#include "fsmac/simulate.hpp"
#include "fsmac/strategy.hpp"

namespace {

using namespace fsmac;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::IoError:
      return 1;
    case Errc::VerificationFailed:
      return 4;
    case Errc::InternalInconsistency:
      return 3;
    default:
      return 2;
  }
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string iso_timestamp() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::IoError, "cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) fail(Errc::IoError, "failed writing '" + path.string() + "'");
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

// Override values are already rendered (numbers stay bare, strings quoted).
struct Manifest {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<std::pair<std::string, std::string>> overrides;
  std::uint64_t seed = 0;
  std::vector<std::string> artifacts;

  void write(const std::filesystem::path& path) const {
    std::ostringstream os;
    os << "{\n  \"command\": \"" << json_escape(command) << "\",\n  \"inputs\": [";
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      os << (i ? ", " : "") << '"' << json_escape(inputs[i]) << '"';
    }
    os << "],\n  \"overrides\": {";
    for (std::size_t i = 0; i < overrides.size(); ++i) {
      os << (i ? ", " : "") << '"' << json_escape(overrides[i].first)
         << "\": " << overrides[i].second;
    }
    os << "},\n  \"seed\": " << seed << ",\n  \"artifacts\": [";
    for (std::size_t i = 0; i < artifacts.size(); ++i) {
      os << (i ? ", " : "") << '"' << json_escape(artifacts[i]) << '"';
    }
    os << "],\n  \"artifactVersion\": \"1\",\n  \"timestamp\": \"" << iso_timestamp()
       << "\"\n}\n";
    write_text_file(path, os.str());
  }
};

std::string quoted(const std::string& s) { return '"' + json_escape(s) + '"'; }

// Shared flag bundles -----------------------------------------------------

struct ScenarioFlags {
  std::string name = "causal_noisy_csit_full_csir";
  std::vector<std::size_t> fA;
  std::vector<std::size_t> fB;

  void attach(CLI::App* cmd) {
    cmd->add_option("--scenario", name,
                    "causal_noisy_csit_full_csir | noisy_csir | deterministic_csit_of_csir | "
                    "delayed | cooperative | cooperative_noisy_csir")
        ->capture_default_str();
    cmd->add_option("--fa", fA, "encoder-a observation map, one entry per receiver symbol")
        ->delimiter(',');
    cmd->add_option("--fb", fB, "encoder-b observation map, one entry per receiver symbol")
        ->delimiter(',');
  }

  ScenarioDescriptor descriptor() const {
    ScenarioDescriptor d;
    d.kind = scenario_from_name(name);
    d.fA = fA;
    d.fB = fB;
    return d;
  }
};

std::size_t default_threads() {
  if (const char* env = std::getenv("FSMAC_THREADS")) {
    const long v = std::atol(env);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 0;  // hardware concurrency
}

struct OptimizerFlags {
  OptimizerConfig config;

  void attach(CLI::App* cmd) {
    config.threads = default_threads();
    cmd->add_option("--restarts", config.restarts, "ascent restarts")->capture_default_str();
    cmd->add_option("--max-iters", config.maxOuterIters, "outer sweep cap")
        ->capture_default_str();
    cmd->add_option("--seed", config.rngSeed, "restart sampling seed")->capture_default_str();
    cmd->add_option("--threads", config.threads, "worker cap (0 = hardware)")
        ->capture_default_str();
  }

  void record(Manifest& m) const {
    m.overrides.emplace_back("restarts", std::to_string(config.restarts));
    m.overrides.emplace_back("maxOuterIters", std::to_string(config.maxOuterIters));
    m.overrides.emplace_back("threads", std::to_string(config.threads));
    m.seed = config.rngSeed;
  }
};

// Policy serialization ----------------------------------------------------

void print_weights(const char* label, const std::vector<double>& w) {
  std::string line = label;
  for (double v : w) {
    line += ' ';
    line += fmt6(v);
  }
  std::puts(line.c_str());
}

void append_rows(std::ostringstream& os, const char* component, const StochasticKernel& k) {
  for (std::size_t r = 0; r < k.rows(); ++r) {
    for (std::size_t c = 0; c < k.cols(); ++c) {
      os << component << ',' << r << ',' << c << ',' << fmt17(k(r, c)) << '\n';
    }
  }
}

void append_vector(std::ostringstream& os, const char* component, const std::vector<double>& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    os << component << ",0," << i << ',' << fmt17(w[i]) << '\n';
  }
}

// TeamPolicy over the strategy space of the reduced channel whose per-symbol
// draw matches drawing inputs independently per observation symbol.
TeamPolicy product_strategy_policy(const ConditionedInputPolicy& policy) {
  const std::size_t nXa = policy.piAGivenCsi.cols();
  const std::size_t nXb = policy.piBGivenCsi.cols();
  const std::size_t nCsiA = policy.piAGivenCsi.rows();
  const std::size_t nCsiB = policy.piBGivenCsi.rows();
  StrategySpace spaceA(nXa, nCsiA);
  StrategySpace spaceB(nXb, nCsiB);
  const std::vector<std::size_t> tabA = spaceA.outputTable();
  const std::vector<std::size_t> tabB = spaceB.outputTable();
  std::vector<double> piA(spaceA.count(), 1.0);
  std::vector<double> piB(spaceB.count(), 1.0);
  for (std::size_t t = 0; t < piA.size(); ++t) {
    for (std::size_t c = 0; c < nCsiA; ++c) piA[t] *= policy.piAGivenCsi(c, tabA[t * nCsiA + c]);
  }
  for (std::size_t t = 0; t < piB.size(); ++t) {
    for (std::size_t c = 0; c < nCsiB; ++c) piB[t] *= policy.piBGivenCsi(c, tabB[t * nCsiB + c]);
  }
  return TeamPolicy::validated(std::move(piA), std::move(piB));
}

// Reduced channel whose encoder observations are the mapped receiver symbol,
// so strategy simulation reproduces the per-observation input draw.
FsMacChannel conditioned_simulation_channel(const NoisyReceiverModel& model,
                                            const std::vector<std::size_t>& fA,
                                            const std::vector<std::size_t>& fB) {
  const FsMacChannel reduced = equivalent_channel(model);
  std::size_t nCsiA = 1, nCsiB = 1;
  for (std::size_t v : fA) nCsiA = std::max(nCsiA, v + 1);
  for (std::size_t v : fB) nCsiB = std::max(nCsiB, v + 1);
  Alphabets a = reduced.alphabets;
  a.nSa = nCsiA;
  a.nSb = nCsiB;
  return FsMacChannel::validated(
      a, reduced.stateDist, StochasticKernel::deterministic(a.nS, nCsiA, fA),
      StochasticKernel::deterministic(a.nS, nCsiB, fB), reduced.channel);
}

// Commands ----------------------------------------------------------------

int cmd_validate(const std::string& path) {
  const ChannelSpec spec = load_channel(path);
  std::printf("valid: kind=%s\n", channel_kind_name(spec));
  return 0;
}

int cmd_sumrate(const std::string& path, const ScenarioFlags& scenario,
                const OptimizerFlags& opt, std::optional<std::size_t> oracleGrid,
                const std::string& outDir) {
  const ChannelSpec spec = load_channel(path);
  const ResolvedScenario rs = resolve_scenario(spec, scenario.descriptor());

  double value = 0.0;
  bool converged = false;
  std::ostringstream csv;
  csv << "component,row,col,weight\n";

  std::optional<double> oracleValue;
  if (rs.conditioned) {
    if (oracleGrid) {
      fail(Errc::ScenarioMismatch,
           "--oracle-grid covers team and cooperative scenarios only");
    }
    const ConditionedSearchResult r =
        maximize_conditioned_rate(*rs.conditioned, rs.fA, rs.fB, 0.5, opt.config);
    value = r.rates.rSum;
    converged = r.converged;
    append_rows(csv, "piAGivenCsi", r.policy.piAGivenCsi);
    append_rows(csv, "piBGivenCsi", r.policy.piBGivenCsi);
    std::printf("sumRate=%s\n", fmt6(value).c_str());
    std::printf("converged=%s\n", converged ? "yes" : "no");
    for (std::size_t c = 0; c < r.policy.piAGivenCsi.rows(); ++c) {
      auto row = r.policy.piAGivenCsi.row(c);
      print_weights(("piA|csi=" + std::to_string(c) + ":").c_str(),
                    std::vector<double>(row.begin(), row.end()));
    }
    for (std::size_t c = 0; c < r.policy.piBGivenCsi.rows(); ++c) {
      auto row = r.policy.piBGivenCsi.row(c);
      print_weights(("piB|csi=" + std::to_string(c) + ":").c_str(),
                    std::vector<double>(row.begin(), row.end()));
    }
  } else if (rs.cooperative) {
    const CooperativeSearchResult r = maximize_cooperative(*rs.team, 1.0, opt.config, true);
    value = r.rates.rSum;
    converged = r.converged;
    append_vector(csv, "piJoint", r.policy.piJoint);
    std::printf("sumRate=%s\n", fmt6(value).c_str());
    std::printf("converged=%s\n", converged ? "yes" : "no");
    for (std::size_t xA = 0; xA < r.policy.nXa; ++xA) {
      std::vector<double> row(r.policy.piJoint.begin() + xA * r.policy.nTb,
                              r.policy.piJoint.begin() + (xA + 1) * r.policy.nTb);
      print_weights(("piJoint|xa=" + std::to_string(xA) + ":").c_str(), row);
    }
    if (oracleGrid) {
      oracleValue =
          exhaustive_oracle_cooperative(*rs.team, 1.0, *oracleGrid, opt.config.oracleBudget)
              .value;
    }
  } else {
    const TeamSearchResult r = maximize_sum_rate(*rs.team, opt.config);
    value = r.value;
    converged = r.converged;
    append_vector(csv, "piA", r.policy.piA);
    append_vector(csv, "piB", r.policy.piB);
    std::printf("sumRate=%s\n", fmt6(value).c_str());
    std::printf("converged=%s\n", converged ? "yes" : "no");
    print_weights("piA:", r.policy.piA);
    print_weights("piB:", r.policy.piB);
    if (oracleGrid) {
      oracleValue =
          exhaustive_oracle_sum_rate(*rs.team, *oracleGrid, opt.config.oracleBudget).value;
    }
  }

  const std::filesystem::path dir(outDir);
  std::filesystem::create_directories(dir);
  const std::filesystem::path csvPath = dir / "sumrate.csv";
  write_text_file(csvPath, csv.str());

  Manifest m;
  m.command = "sumrate";
  m.inputs = {path};
  m.overrides.emplace_back("scenario", quoted(scenario.name));
  opt.record(m);
  if (oracleGrid) m.overrides.emplace_back("oracleGrid", std::to_string(*oracleGrid));
  m.artifacts = {csvPath.string()};
  m.write(dir / "sumrate.manifest.json");

  if (oracleValue) {
    std::printf("oracle=%s\n", fmt6(*oracleValue).c_str());
    // The grid value is a certified lower bound; the ascent value must reach
    // it, and may exceed a coarse grid only by the refinement allowance.
    if (*oracleValue > value + 1e-6 || value > *oracleValue + 5e-3) {
      std::fprintf(stderr, "error: ascent %s and grid oracle %s disagree\n",
                   fmt6(value).c_str(), fmt6(*oracleValue).c_str());
      return 3;
    }
  }
  return converged ? 0 : 3;
}

int cmd_region(const std::string& path, const ScenarioFlags& scenario, const OptimizerFlags& opt,
               std::size_t lambdas, const std::string& outDir) {
  const ChannelSpec spec = load_channel(path);
  const ScenarioDescriptor desc = scenario.descriptor();
  RateRegion region = inner_bound_region(spec, desc, default_lambdas(lambdas), opt.config);
  region.outerSumRate = outer_sum_rate(spec, desc, opt.config);

  const std::filesystem::path dir(outDir);
  std::filesystem::create_directories(dir);
  const std::filesystem::path cornersPath = dir / "region_corners.csv";
  const std::filesystem::path hullPath = dir / "region_hull.csv";
  write_text_file(cornersPath, region_corners_csv(region));
  write_text_file(hullPath, hull_csv(region));

  Manifest m;
  m.command = "region";
  m.inputs = {path};
  m.overrides.emplace_back("scenario", quoted(scenario.name));
  m.overrides.emplace_back("lambdas", std::to_string(lambdas));
  opt.record(m);
  m.artifacts = {cornersPath.string(), hullPath.string()};
  m.write(dir / "region.manifest.json");

  std::printf("outerSumRate=%s\n", fmt6(*region.outerSumRate).c_str());
  std::printf("hullPoints=%zu\n", region.hullPoints.size());
  std::printf("corners=%s\n", cornersPath.string().c_str());
  std::printf("hull=%s\n", hullPath.string().c_str());
  return 0;
}

TeamPolicy load_team_policy(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open '" + path + "' for reading");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("policy file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("piA") || !j.contains("piB")) {
    fail(Errc::ParseError, "policy file must be an object with arrays piA and piB");
  }
  for (const auto& item : j.items()) {
    if (item.key() != "piA" && item.key() != "piB") {
      fail(Errc::ParseError, "unknown field '" + item.key() + "' in policy file");
    }
  }
  auto weights = [](const nlohmann::json& arr, const char* name) {
    if (!arr.is_array() || arr.empty()) {
      fail(Errc::ParseError, std::string(name) + " must be a nonempty array");
    }
    std::vector<double> out;
    for (const auto& v : arr) {
      if (!v.is_number()) fail(Errc::ParseError, std::string(name) + " must hold numbers");
      out.push_back(v.get<double>());
    }
    return out;
  };
  return TeamPolicy::validated(weights(j.at("piA"), "piA"), weights(j.at("piB"), "piB"));
}

int cmd_simulate(const std::string& path, const ScenarioFlags& scenario,
                 const std::string& policyPath, SimulationParams params,
                 const std::string& outDir, std::size_t restarts) {
  const ChannelSpec spec = load_channel(path);
  const ResolvedScenario rs = resolve_scenario(spec, scenario.descriptor());
  if (rs.cooperative) {
    fail(Errc::ScenarioMismatch, "simulation needs product-form codebooks; cooperative "
                                 "scenarios share the private message across encoders");
  }

  FsMacChannel channel = rs.team ? *rs.team : FsMacChannel();
  TeamPolicy policy;
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.rngSeed = params.rngSeed;
  cfg.threads = params.threads;
  if (rs.conditioned) {
    channel = conditioned_simulation_channel(*rs.conditioned, rs.fA, rs.fB);
    if (!policyPath.empty()) {
      policy = load_team_policy(policyPath);
    } else {
      const ConditionedSearchResult r =
          maximize_conditioned_rate(*rs.conditioned, rs.fA, rs.fB, 0.5, cfg);
      policy = product_strategy_policy(r.policy);
    }
  } else if (!policyPath.empty()) {
    policy = load_team_policy(policyPath);
  } else {
    policy = maximize_sum_rate(channel, cfg).policy;
  }

  const ErrorReport report = estimate_error(channel, policy, params);
  const std::string csv = report.csv();
  fputs(csv.c_str(), stdout);
  std::printf("decoding=%s\n", report.literalDecoding ? "literal" : "scored");

  const std::filesystem::path dir(outDir);
  std::filesystem::create_directories(dir);
  const std::filesystem::path csvPath = dir / "simulation.csv";
  write_text_file(csvPath, csv);

  Manifest m;
  m.command = "simulate";
  m.inputs = {path};
  if (!policyPath.empty()) m.inputs.push_back(policyPath);
  m.overrides.emplace_back("scenario", quoted(scenario.name));
  m.overrides.emplace_back("n", std::to_string(params.n));
  m.overrides.emplace_back("rateA", fmt17(params.rateA));
  m.overrides.emplace_back("rateB", fmt17(params.rateB));
  m.overrides.emplace_back("epsilon", fmt17(params.epsilon));
  m.overrides.emplace_back("trials", std::to_string(params.trials));
  m.overrides.emplace_back("codewordBudget", std::to_string(params.codewordBudget));
  m.overrides.emplace_back("threads", std::to_string(params.threads));
  m.seed = params.rngSeed;
  m.artifacts = {csvPath.string()};
  m.write(dir / "simulation.manifest.json");
  return 0;
}

int report_exit(const VerificationReport& rep) {
  fputs(rep.text().c_str(), stdout);
  return rep.passed ? 0 : 4;
}

int cmd_verify_modulo(const std::string& specPath, const OptimizerFlags& opt) {
  const ChannelSpec spec = load_channel(specPath);
  const auto* mod = std::get_if<ModuloAdditiveSpec>(&spec);
  if (!mod) fail(Errc::ScenarioMismatch, "verify modulo needs a modulo_additive spec file");
  return report_exit(verify_modulo_example(*mod, opt.config));
}

int cmd_verify_multiplier(std::optional<std::string> specPath, double pS, double pR,
                          const OptimizerFlags& opt) {
  BinaryMultiplierSpec spec;
  if (specPath) {
    const ChannelSpec loaded = load_channel(*specPath);
    const auto* m = std::get_if<BinaryMultiplierSpec>(&loaded);
    if (!m) fail(Errc::ScenarioMismatch, "verify multiplier needs a binary_multiplier spec file");
    spec = *m;
  } else {
    spec = BinaryMultiplierSpec::validated(pS, pR);
  }
  return report_exit(verify_binary_multiplier(spec, opt.config));
}

int cmd_verify_auxiliary(const std::string& specPath, std::uint64_t samples,
                         const OptimizerFlags& opt) {
  const ChannelSpec spec = load_channel(specPath);
  const ScenarioDescriptor desc{ScenarioKind::Cooperative, 0, 0, {}, {}};
  const ResolvedScenario rs = resolve_scenario(spec, desc);
  return report_exit(verify_auxiliary_equivalence(*rs.team, samples, opt.config));
}

int cmd_equivalent(const std::string& path, std::string outPath) {
  const ChannelSpec spec = load_channel(path);
  NoisyReceiverModel model;
  if (const auto* m = std::get_if<NoisyReceiverModel>(&spec)) {
    model = *m;
  } else if (const auto* b = std::get_if<BinaryMultiplierSpec>(&spec)) {
    model = build_binary_multiplier(*b);
  } else {
    fail(Errc::ScenarioMismatch, "equivalent-channel reduction needs a noisy-receiver model");
  }

  if (outPath.empty()) {
    std::filesystem::path p(path);
    p.replace_extension();
    outPath = p.string() + ".equivalent.json";
  }
  const std::filesystem::path parent = std::filesystem::path(outPath).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  const ChannelSpec reduced = equivalent_channel(model);
  save_channel(reduced, outPath);

  Manifest m;
  m.command = "equivalent";
  m.inputs = {path};
  m.artifacts = {outPath};
  m.write(outPath + ".manifest.json");

  std::printf("wrote %s\n", outPath.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-state multiple-access channel toolkit"};
  app.require_subcommand(1);

  // validate
  std::string validatePath;
  CLI::App* validate = app.add_subcommand("validate", "check a channel spec file");
  validate->add_option("path", validatePath, "channel spec file")->required();

  // sumrate
  std::string sumratePath, sumrateOut = ".";
  ScenarioFlags sumrateScenario;
  OptimizerFlags sumrateOpt;
  std::optional<std::size_t> oracleGrid;
  CLI::App* sumrate = app.add_subcommand("sumrate", "maximize the sum rate");
  sumrate->add_option("path", sumratePath, "channel spec file")->required();
  sumrateScenario.attach(sumrate);
  sumrateOpt.attach(sumrate);
  sumrate->add_option("--oracle-grid", oracleGrid,
                      "cross-check against the exhaustive grid oracle at this resolution");
  sumrate->add_option("--out", sumrateOut, "artifact directory")->capture_default_str();

  // region
  std::string regionPath, regionOut = ".";
  ScenarioFlags regionScenario;
  OptimizerFlags regionOpt;
  std::size_t lambdas = 33;
  CLI::App* region = app.add_subcommand("region", "trace the achievable rate region");
  region->add_option("path", regionPath, "channel spec file")->required();
  regionScenario.attach(region);
  regionOpt.attach(region);
  region->add_option("--lambdas", lambdas, "support directions to sample")
      ->capture_default_str();
  region->add_option("--out", regionOut, "artifact directory")->capture_default_str();

  // simulate
  std::string simulatePath, simulateOut = ".", policyPath;
  ScenarioFlags simulateScenario;
  SimulationParams simParams;
  std::size_t simRestarts = 16;
  simParams.threads = default_threads();
  CLI::App* simulate = app.add_subcommand("simulate", "random-codebook error simulation");
  simulate->add_option("path", simulatePath, "channel spec file")->required();
  simulateScenario.attach(simulate);
  simulate->add_option("--policy", policyPath, "JSON file with piA/piB strategy weights");
  simulate->add_option("--n", simParams.n, "block length")->capture_default_str();
  simulate->add_option("--ra", simParams.rateA, "rate of encoder a (bits/use)")
      ->capture_default_str();
  simulate->add_option("--rb", simParams.rateB, "rate of encoder b (bits/use)")
      ->capture_default_str();
  simulate->add_option("--epsilon", simParams.epsilon, "typicality slack")
      ->capture_default_str();
  simulate->add_option("--trials", simParams.trials, "independent transmissions")
      ->capture_default_str();
  simulate->add_option("--seed", simParams.rngSeed, "simulation seed")->capture_default_str();
  simulate->add_option("--budget", simParams.codewordBudget,
                       "codeword budget before decoding switches to scored competitors")
      ->capture_default_str();
  simulate->add_option("--threads", simParams.threads, "worker cap (0 = hardware)")
      ->capture_default_str();
  simulate->add_option("--restarts", simRestarts, "ascent restarts for --optimal policy")
      ->capture_default_str();
  simulate->add_option("--out", simulateOut, "artifact directory")->capture_default_str();

  // verify
  CLI::App* verify = app.add_subcommand("verify", "closed-form and equivalence checks");
  verify->require_subcommand(1);
  std::string verifyModuloSpec;
  OptimizerFlags verifyModuloOpt;
  CLI::App* verifyModulo = verify->add_subcommand("modulo", "modulo-additive closed form");
  verifyModulo->add_option("--spec", verifyModuloSpec, "modulo_additive spec file")->required();
  verifyModuloOpt.attach(verifyModulo);

  std::optional<std::string> verifyMultSpec;
  double pR = 0.1, pS = 0.5;
  OptimizerFlags verifyMultOpt;
  CLI::App* verifyMult = verify->add_subcommand("multiplier", "binary multiplier closed form");
  verifyMult->add_option("--spec", verifyMultSpec, "binary_multiplier spec file");
  verifyMult->add_option("--pr", pR, "receiver observation crossover")->capture_default_str();
  verifyMult->add_option("--ps", pS, "probability the state is 1")->capture_default_str();
  verifyMultOpt.attach(verifyMult);

  std::string verifyAuxSpec;
  std::uint64_t auxSamples = 10000;
  OptimizerFlags verifyAuxOpt;
  CLI::App* verifyAux =
      verify->add_subcommand("auxiliary", "auxiliary-variable form of the cooperative region");
  verifyAux->add_option("--spec", verifyAuxSpec, "channel spec with an uninformed encoder a")
      ->required();
  verifyAux->add_option("--samples", auxSamples, "random auxiliary distributions")
      ->capture_default_str();
  verifyAuxOpt.attach(verifyAux);

  // equivalent
  std::string equivalentPath, equivalentOut;
  CLI::App* equivalent =
      app.add_subcommand("equivalent", "write the reduced complete-knowledge channel");
  equivalent->add_option("path", equivalentPath, "noisy-receiver spec file")->required();
  equivalent->add_option("--output", equivalentOut, "output file (default <input>.equivalent.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(validatePath);
    if (sumrate->parsed()) {
      return cmd_sumrate(sumratePath, sumrateScenario, sumrateOpt, oracleGrid, sumrateOut);
    }
    if (region->parsed()) {
      return cmd_region(regionPath, regionScenario, regionOpt, lambdas, regionOut);
    }
    if (simulate->parsed()) {
      return cmd_simulate(simulatePath, simulateScenario, policyPath, simParams, simulateOut,
                          simRestarts);
    }
    if (verify->parsed()) {
      if (verifyModulo->parsed()) return cmd_verify_modulo(verifyModuloSpec, verifyModuloOpt);
      if (verifyMult->parsed()) {
        return cmd_verify_multiplier(verifyMultSpec, pS, pR, verifyMultOpt);
      }
      if (verifyAux->parsed()) {
        return cmd_verify_auxiliary(verifyAuxSpec, auxSamples, verifyAuxOpt);
      }
    }
    if (equivalent->parsed()) return cmd_equivalent(equivalentPath, equivalentOut);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 3;
  }
  return 2;
}
