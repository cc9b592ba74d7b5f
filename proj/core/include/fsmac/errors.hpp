#pragma once

#include <stdexcept>
#include <string>

namespace fsmac {

enum class Errc {
  NonStochasticRow,
  NegativeProbability,
  DimensionMismatch,
  EnumerationLimitExceeded,
  IoError,
  ParseError,
  SchemaVersionMismatch,
  IndexOutOfRange,
  InvalidDistribution,
  AxisOverlap,
  OracleBudgetExceeded,
  BudgetExceeded,
  ScenarioMismatch,
  NonFinitePoint,
  VerificationFailed,
  InternalInconsistency,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace fsmac
