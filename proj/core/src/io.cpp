#include "fsmac/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fsmac/errors.hpp"

namespace fsmac {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "1";

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  std::string s(buf);
  // keep every number a JSON double so round trips stay type-stable
  if (s.find_first_of(".eEnN") == std::string::npos) s += ".0";
  return s;
}

// ---- writing (hand-rolled for stable field order and digit control) ----

void write_vector(std::ostream& os, const std::vector<double>& v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << fmt17(v[i]);
  }
  os << ']';
}

void write_kernel(std::ostream& os, const StochasticKernel& k, const char* indent) {
  os << "[\n";
  for (std::size_t r = 0; r < k.rows(); ++r) {
    os << indent << "  ";
    write_vector(os, std::vector<double>(k.row(r).begin(), k.row(r).end()));
    os << (r + 1 < k.rows() ? ",\n" : "\n");
  }
  os << indent << ']';
}

// channel kernel nested [xA][xB][s] -> row over y
void write_channel_kernel(std::ostream& os, const StochasticKernel& k, std::size_t nXa,
                          std::size_t nXb, std::size_t nS) {
  os << "[\n";
  for (std::size_t xa = 0; xa < nXa; ++xa) {
    os << "    [\n";
    for (std::size_t xb = 0; xb < nXb; ++xb) {
      os << "      [\n";
      for (std::size_t s = 0; s < nS; ++s) {
        os << "        ";
        auto row = k.row((xa * nXb + xb) * nS + s);
        write_vector(os, std::vector<double>(row.begin(), row.end()));
        os << (s + 1 < nS ? ",\n" : "\n");
      }
      os << "      ]" << (xb + 1 < nXb ? ",\n" : "\n");
    }
    os << "    ]" << (xa + 1 < nXa ? ",\n" : "\n");
  }
  os << "  ]";
}

void write_alphabets(std::ostream& os, const Alphabets& a, bool withSr) {
  os << "{\"nS\": " << a.nS << ", \"nSa\": " << a.nSa << ", \"nSb\": " << a.nSb
     << ", \"nXa\": " << a.nXa << ", \"nXb\": " << a.nXb << ", \"nY\": " << a.nY;
  if (withSr) os << ", \"nSr\": " << a.nSr;
  os << '}';
}

struct Writer {
  std::string operator()(const FsMacChannel& m) const {
    std::ostringstream os;
    os << "{\n  \"version\": \"" << kVersion << "\",\n  \"kind\": \"fsmac\",\n  \"alphabets\": ";
    write_alphabets(os, m.alphabets, false);
    os << ",\n  \"stateDist\": ";
    write_vector(os, m.stateDist);
    os << ",\n  \"csiA\": ";
    write_kernel(os, m.csiA, "  ");
    os << ",\n  \"csiB\": ";
    write_kernel(os, m.csiB, "  ");
    os << ",\n  \"channel\": ";
    write_channel_kernel(os, m.channel, m.alphabets.nXa, m.alphabets.nXb, m.alphabets.nS);
    os << "\n}\n";
    return os.str();
  }

  std::string operator()(const NoisyReceiverModel& m) const {
    std::ostringstream os;
    os << "{\n  \"version\": \"" << kVersion
       << "\",\n  \"kind\": \"noisy_receiver\",\n  \"alphabets\": ";
    write_alphabets(os, m.alphabets, true);
    os << ",\n  \"srDist\": ";
    write_vector(os, m.srDist);
    os << ",\n  \"stateGivenSr\": ";
    write_kernel(os, m.stateGivenSr, "  ");
    os << ",\n  \"csiAGivenSr\": ";
    write_kernel(os, m.csiAGivenSr, "  ");
    os << ",\n  \"csiBGivenSr\": ";
    write_kernel(os, m.csiBGivenSr, "  ");
    os << ",\n  \"channel\": ";
    write_channel_kernel(os, m.channel, m.alphabets.nXa, m.alphabets.nXb, m.alphabets.nS);
    os << "\n}\n";
    return os.str();
  }

  std::string operator()(const ModuloAdditiveSpec& m) const {
    std::ostringstream os;
    os << "{\n  \"version\": \"" << kVersion
       << "\",\n  \"kind\": \"modulo_additive\",\n  \"q\": " << m.q << ",\n  \"stateDist\": ";
    write_vector(os, m.stateDist);
    os << ",\n  \"csiA\": ";
    write_kernel(os, m.csiA, "  ");
    os << ",\n  \"csiB\": ";
    write_kernel(os, m.csiB, "  ");
    os << ",\n  \"noiseGivenState\": ";
    write_kernel(os, m.noiseGivenState, "  ");
    os << "\n}\n";
    return os.str();
  }

  std::string operator()(const BinaryMultiplierSpec& m) const {
    std::ostringstream os;
    os << "{\n  \"version\": \"" << kVersion
       << "\",\n  \"kind\": \"binary_multiplier\",\n  \"pS\": " << fmt17(m.pS)
       << ",\n  \"pR\": " << fmt17(m.pR) << "\n}\n";
    return os.str();
  }
};

// ---- parsing ----

void expect_fields(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) fail(Errc::ParseError, std::string(where) + " must be a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* name : allowed) {
      if (item.key() == name) {
        known = true;
        break;
      }
    }
    if (!known) {
      fail(Errc::ParseError, std::string("unknown field '") + item.key() + "' in " + where);
    }
  }
  for (const char* name : allowed) {
    if (!j.contains(name)) {
      fail(Errc::ParseError, std::string("missing field '") + name + "' in " + where);
    }
  }
}

std::size_t as_size(const json& j, const char* name) {
  if (!j.is_number_unsigned()) {
    fail(Errc::ParseError, std::string("field '") + name + "' must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

double as_prob(const json& j, const char* name) {
  if (!j.is_number()) fail(Errc::ParseError, std::string("field '") + name + "' must be a number");
  return j.get<double>();
}

std::vector<double> as_dist(const json& j, std::size_t n, const char* name) {
  if (!j.is_array() || j.size() != n) {
    fail(Errc::ParseError,
         std::string("field '") + name + "' must be an array of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  out.reserve(n);
  for (const json& v : j) out.push_back(as_prob(v, name));
  return out;
}

StochasticKernel as_kernel(const json& j, std::size_t rows, std::size_t cols, const char* name) {
  if (!j.is_array() || j.size() != rows) {
    fail(Errc::ParseError,
         std::string("field '") + name + "' must be an array of " + std::to_string(rows) + " rows");
  }
  std::vector<double> flat;
  flat.reserve(rows * cols);
  for (const json& row : j) {
    const std::vector<double> r = as_dist(row, cols, name);
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return StochasticKernel(rows, cols, std::move(flat));
}

// nested [xA][xB][s] -> y rows, flattened to (xA * nXb + xB) * nS + s
StochasticKernel as_channel_kernel(const json& j, const Alphabets& a) {
  if (!j.is_array() || j.size() != a.nXa) {
    fail(Errc::ParseError, "field 'channel' must have one entry per input symbol of encoder a");
  }
  std::vector<double> flat;
  flat.reserve(a.nXa * a.nXb * a.nS * a.nY);
  for (const json& perXa : j) {
    if (!perXa.is_array() || perXa.size() != a.nXb) {
      fail(Errc::ParseError, "field 'channel' must nest one entry per input symbol of encoder b");
    }
    for (const json& perXb : perXa) {
      if (!perXb.is_array() || perXb.size() != a.nS) {
        fail(Errc::ParseError, "field 'channel' must nest one output row per state");
      }
      for (const json& row : perXb) {
        const std::vector<double> r = as_dist(row, a.nY, "channel");
        flat.insert(flat.end(), r.begin(), r.end());
      }
    }
  }
  return StochasticKernel(a.nXa * a.nXb * a.nS, a.nY, std::move(flat));
}

Alphabets parse_alphabets(const json& j, bool withSr) {
  if (withSr) {
    expect_fields(j, {"nS", "nSa", "nSb", "nXa", "nXb", "nY", "nSr"}, "alphabets");
  } else {
    expect_fields(j, {"nS", "nSa", "nSb", "nXa", "nXb", "nY"}, "alphabets");
  }
  Alphabets a;
  a.nS = as_size(j.at("nS"), "nS");
  a.nSa = as_size(j.at("nSa"), "nSa");
  a.nSb = as_size(j.at("nSb"), "nSb");
  a.nXa = as_size(j.at("nXa"), "nXa");
  a.nXb = as_size(j.at("nXb"), "nXb");
  a.nY = as_size(j.at("nY"), "nY");
  a.nSr = withSr ? as_size(j.at("nSr"), "nSr") : 0;
  return a;
}

}  // namespace

const char* channel_kind_name(const ChannelSpec& spec) noexcept {
  switch (spec.index()) {
    case 0: return "fsmac";
    case 1: return "noisy_receiver";
    case 2: return "modulo_additive";
    case 3: return "binary_multiplier";
  }
  return "unknown";
}

std::string channel_to_json(const ChannelSpec& spec) { return std::visit(Writer{}, spec); }

ChannelSpec channel_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(Errc::ParseError, "top level must be a JSON object");
  if (!j.contains("version") || !j.at("version").is_string()) {
    fail(Errc::ParseError, "missing string field 'version'");
  }
  if (j.at("version").get<std::string>() != kVersion) {
    fail(Errc::SchemaVersionMismatch,
         "expected version \"1\", got \"" + j.at("version").get<std::string>() + "\"");
  }
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    fail(Errc::ParseError, "missing string field 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();

  if (kind == "fsmac") {
    expect_fields(j, {"version", "kind", "alphabets", "stateDist", "csiA", "csiB", "channel"},
                  "fsmac document");
    const Alphabets a = parse_alphabets(j.at("alphabets"), false);
    return FsMacChannel::validated(a, as_dist(j.at("stateDist"), a.nS, "stateDist"),
                                   as_kernel(j.at("csiA"), a.nS, a.nSa, "csiA"),
                                   as_kernel(j.at("csiB"), a.nS, a.nSb, "csiB"),
                                   as_channel_kernel(j.at("channel"), a));
  }
  if (kind == "noisy_receiver") {
    expect_fields(j,
                  {"version", "kind", "alphabets", "srDist", "stateGivenSr", "csiAGivenSr",
                   "csiBGivenSr", "channel"},
                  "noisy_receiver document");
    const Alphabets a = parse_alphabets(j.at("alphabets"), true);
    return NoisyReceiverModel::validated(
        a, as_dist(j.at("srDist"), a.nSr, "srDist"),
        as_kernel(j.at("stateGivenSr"), a.nSr, a.nS, "stateGivenSr"),
        as_kernel(j.at("csiAGivenSr"), a.nSr, a.nSa, "csiAGivenSr"),
        as_kernel(j.at("csiBGivenSr"), a.nSr, a.nSb, "csiBGivenSr"),
        as_channel_kernel(j.at("channel"), a));
  }
  if (kind == "modulo_additive") {
    expect_fields(j, {"version", "kind", "q", "stateDist", "csiA", "csiB", "noiseGivenState"},
                  "modulo_additive document");
    const std::size_t q = as_size(j.at("q"), "q");
    const std::size_t nS = j.at("stateDist").is_array() ? j.at("stateDist").size() : 0;
    if (nS == 0) fail(Errc::ParseError, "field 'stateDist' must be a nonempty array");
    const json& csiA = j.at("csiA");
    const json& csiB = j.at("csiB");
    const std::size_t nSa =
        csiA.is_array() && !csiA.empty() && csiA.at(0).is_array() ? csiA.at(0).size() : 0;
    const std::size_t nSb =
        csiB.is_array() && !csiB.empty() && csiB.at(0).is_array() ? csiB.at(0).size() : 0;
    if (nSa == 0 || nSb == 0) fail(Errc::ParseError, "csiA/csiB must be arrays of rows");
    return ModuloAdditiveSpec::validated(q, as_dist(j.at("stateDist"), nS, "stateDist"),
                                         as_kernel(csiA, nS, nSa, "csiA"),
                                         as_kernel(csiB, nS, nSb, "csiB"),
                                         as_kernel(j.at("noiseGivenState"), nS, q,
                                                   "noiseGivenState"));
  }
  if (kind == "binary_multiplier") {
    expect_fields(j, {"version", "kind", "pS", "pR"}, "binary_multiplier document");
    return BinaryMultiplierSpec::validated(as_prob(j.at("pS"), "pS"), as_prob(j.at("pR"), "pR"));
  }
  fail(Errc::ParseError, "unknown kind '" + kind + "'");
}

void save_channel(const ChannelSpec& spec, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::IoError, "cannot open '" + path + "' for writing");
  out << channel_to_json(spec);
  out.flush();
  if (!out) fail(Errc::IoError, "failed writing '" + path + "'");
}

ChannelSpec load_channel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail(Errc::IoError, "failed reading '" + path + "'");
  return channel_from_json(buffer.str());
}

}  // namespace fsmac
