#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qmin/bounds.hpp"
#include "qmin/constructions.hpp"
#include "qmin/registry.hpp"
#include "qmin/search.hpp"

namespace qmin {

/// One instance of a family row with its formula value.
struct FamilyCase {
  std::string row;   // "C_n", "KP(n_1..n_s)", ...
  std::string name;  // "C_7"
  Graph graph;
  int expected = 0;
  /// Witnesses the row's construction provides for this instance; may be empty.
  std::function<std::vector<ConstructionResult>(const SearchBudget&)> witnesses;
  /// Only containment of `expected` is checked (rows without a constructive upper bound).
  bool containment_only = false;
};

/// All family-table instances at desk scale.
std::vector<FamilyCase> family_table_cases();
/// Instances whose row label starts with `row` (e.g. "C_4 box").
std::vector<FamilyCase> family_table_cases(const std::string& row);

struct FamilyOutcome {
  std::string row;
  std::string name;
  int expected = 0;
  BoundReport report;
  bool passed = false;
  std::string note;  // e.g. why a witness could not be built
};

/// Registers the case's witnesses on a copy of `base` and runs the bound engine.
FamilyOutcome evaluate_family_case(const FamilyCase& c, const Registry& base, const SearchBudget& budget = {},
                                   const BoundOptions& opts = {});
/// Evaluates cases concurrently; output order follows `cases`.
std::vector<FamilyOutcome> evaluate_family_cases(const std::vector<FamilyCase>& cases, const Registry& base,
                                                 const SearchBudget& budget = {}, const BoundOptions& opts = {},
                                                 int threads = 0);

}  // namespace qmin
