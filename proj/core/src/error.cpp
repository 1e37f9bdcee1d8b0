#include "qmin/error.hpp"

namespace qmin {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParams: return "invalid-params";
    case ErrorKind::MissingElement: return "missing-element";
    case ErrorKind::DisconnectedGraph: return "disconnected-graph";
    case ErrorKind::TooLarge: return "too-large";
    case ErrorKind::OrderMismatch: return "order-mismatch";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::PatternMismatch: return "pattern-mismatch";
    case ErrorKind::MultiplicityMismatch: return "multiplicity-mismatch";
    case ErrorKind::VerificationFailed: return "verification-failed";
    case ErrorKind::ConvergenceFailure: return "convergence-failure";
    case ErrorKind::SpectrumNotSymmetric: return "spectrum-not-symmetric";
    case ErrorKind::NonzeroDiagonal: return "nonzero-diagonal";
    case ErrorKind::ZeroDiagonalEntry: return "zero-diagonal-entry";
    case ErrorKind::SpectrumNotConsecutive: return "spectrum-not-consecutive-integers";
    case ErrorKind::InvalidSizes: return "invalid-sizes";
    case ErrorKind::RealizationFailed: return "realization-failed";
    case ErrorKind::HypothesisNotSatisfied: return "hypothesis-not-satisfied";
    case ErrorKind::DegreeConditionViolated: return "degree-condition-violated";
    case ErrorKind::InfeasibleReport: return "infeasible-report";
    case ErrorKind::CountMismatch: return "count-mismatch";
    case ErrorKind::UnknownKey: return "unknown-key";
    case ErrorKind::CatalogCorrupt: return "catalog-corrupt";
    case ErrorKind::ParseError: return "parse-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace qmin
