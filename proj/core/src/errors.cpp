#include "fsmac/errors.hpp"

namespace fsmac {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::NonStochasticRow: return "NonStochasticRow";
    case Errc::NegativeProbability: return "NegativeProbability";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::EnumerationLimitExceeded: return "EnumerationLimitExceeded";
    case Errc::IoError: return "IoError";
    case Errc::ParseError: return "ParseError";
    case Errc::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::InvalidDistribution: return "InvalidDistribution";
    case Errc::AxisOverlap: return "AxisOverlap";
    case Errc::OracleBudgetExceeded: return "OracleBudgetExceeded";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::ScenarioMismatch: return "ScenarioMismatch";
    case Errc::NonFinitePoint: return "NonFinitePoint";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::InternalInconsistency: return "InternalInconsistency";
  }
  return "UnknownError";
}

}  // namespace fsmac
