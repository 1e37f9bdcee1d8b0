#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmin {

enum class ErrorKind {
  InvalidParams,
  MissingElement,
  DisconnectedGraph,
  TooLarge,
  OrderMismatch,
  DimensionMismatch,
  PatternMismatch,
  MultiplicityMismatch,
  VerificationFailed,
  ConvergenceFailure,
  SpectrumNotSymmetric,
  NonzeroDiagonal,
  ZeroDiagonalEntry,
  SpectrumNotConsecutive,
  InvalidSizes,
  RealizationFailed,
  HypothesisNotSatisfied,
  DegreeConditionViolated,
  InfeasibleReport,
  CountMismatch,
  UnknownKey,
  CatalogCorrupt,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qmin
