#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qmin/bounds.hpp"
#include "qmin/catalog.hpp"
#include "qmin/search.hpp"
#include "qmin/strongprops.hpp"

namespace qmin {

/// Shortest form of x at 17 significant digits (round-trips every double).
std::string format_double(double x);

/// {"n": n, "rows": [["..", ...], ...]} with entries as decimal strings.
std::string matrix_to_json(const SymMatrix& a, int indent = -1);
/// Accepts strings (decimal or closed-form expressions) or numbers. Throws parse-error.
SymMatrix matrix_from_json(std::string_view text);

/// Graph6, 1-based edges, matrix, spectrum summary, flags and source.
std::string witness_to_json(const WitnessRecord& w, int indent = -1);
/// Rebuilds a record and re-verifies the flags it claims (via make_witness).
WitnessRecord witness_from_json(std::string_view text);
/// A JSON array of witness records.
std::string registry_to_json(const Registry& r, int indent = -1);

std::string spectrum_to_json(const SpectrumSummary& s, int indent = -1);
std::string report_to_json(const BoundReport& r, int indent = -1);
std::string report_csv_header();
/// One CSV line (without newline) for a report, with a caller-chosen label.
std::string report_csv_row(const std::string& label, const BoundReport& r);
std::string realization_to_json(const RealizationResult& r, int indent = -1);
std::string conformance_to_json(const ConformanceReport& r, int indent = -1);

/// Quotes a CSV field when needed.
std::string csv_field(std::string_view s);

}  // namespace qmin
