#include "qmin/serialize.hpp"

#include <charconv>
#include <cmath>

#include "json.hpp"
#include "qmin/error.hpp"
#include "qmin/expression.hpp"
#include "qmin/graph_io.hpp"

namespace qmin {
namespace {

using nlohmann::ordered_json;

ordered_json matrix_json(const SymMatrix& a) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < a.size(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < a.size(); ++j) row.push_back(format_double(a(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"n", a.size()}, {"rows", std::move(rows)}};
}

ordered_json graph_json(const Graph& g) {
  ordered_json edges = ordered_json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u + 1, v + 1});
  return {{"n", g.order()}, {"edges", std::move(edges)}};
}

ordered_json spectrum_json(const SpectrumSummary& s) {
  ordered_json ev = ordered_json::array(), cl = ordered_json::array();
  for (double x : s.eigenvalues) ev.push_back(format_double(x));
  for (const auto& c : s.clusters) cl.push_back({{"value", format_double(c.value)}, {"multiplicity", c.multiplicity}});
  return {{"q", s.q}, {"ordered_multiplicities", s.ordered_mult}, {"clusters", std::move(cl)}, {"eigenvalues", std::move(ev)},
          {"gap", format_double(s.tolerance_used)}};
}

ordered_json flags_json(const WitnessFlags& f) {
  return {{"pattern", f.pattern}, {"ssp", f.ssp}, {"smp", f.smp}, {"orthogonal", f.orthogonal}};
}

ordered_json witness_json(const WitnessRecord& w) {
  return {{"id", w.id},       {"graph6", to_graph6(w.graph)}, {"graph", graph_json(w.graph)}, {"matrix", matrix_json(w.matrix)},
          {"spectrum", spectrum_json(w.summary)}, {"flags", flags_json(w.verified)}, {"rank", w.rank}, {"source", w.source}};
}

ordered_json report_json(const BoundReport& r) {
  ordered_json contribs = ordered_json::array();
  for (const auto& c : r.contributions) {
    ordered_json j{{"direction", direction_name(c.direction)}, {"value", c.value}, {"citation", c.citation}, {"detail", c.detail}};
    if (!c.witness_id.empty()) j["witness"] = c.witness_id;
    contribs.push_back(std::move(j));
  }
  return {{"graph6", to_graph6(r.graph)}, {"n", r.graph.order()},        {"m", r.graph.size()},
          {"lo", r.lo},                   {"hi", r.hi},                  {"determined", r.determined},
          {"contributions", contribs},    {"witnesses", r.witnesses},    {"notes", r.notes}};
}

std::string dump(const ordered_json& j, int indent) { return j.dump(indent); }

SymMatrix matrix_from(const ordered_json& j) {
  const auto& rows = j.at("rows");
  const int n = j.contains("n") ? j.at("n").get<int>() : static_cast<int>(rows.size());
  if (static_cast<int>(rows.size()) != n) throw Error(ErrorKind::ParseError, "matrix: row count differs from n");
  Matrix d(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw Error(ErrorKind::ParseError, "matrix: ragged row");
    for (int k = 0; k < n; ++k) {
      const auto& e = rows[i][k];
      d(i, k) = e.is_string() ? evaluate_expression(e.get<std::string>()) : e.get<double>();
    }
  }
  return SymMatrix::from_dense(d, 1e-12 * std::max(1.0, d.cwiseAbs().maxCoeff()));
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (ec != std::errc{}) throw Error(ErrorKind::InvalidParams, "cannot format number");
  return std::string(buf, end);
}

std::string matrix_to_json(const SymMatrix& a, int indent) { return dump(matrix_json(a), indent); }

SymMatrix matrix_from_json(std::string_view text) {
  try {
    return matrix_from(ordered_json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("matrix JSON: ") + e.what());
  }
}

std::string witness_to_json(const WitnessRecord& w, int indent) { return dump(witness_json(w), indent); }

WitnessRecord witness_from_json(std::string_view text) {
  try {
    const auto j = ordered_json::parse(text);
    const Graph g = j.contains("graph6") ? from_graph6(j.at("graph6").get<std::string>())
                                         : graph_from_json(j.at("graph").dump());
    const SymMatrix a = matrix_from(j.at("matrix"));
    WitnessFlags claimed;
    if (j.contains("flags")) {
      const auto& f = j.at("flags");
      claimed.pattern = f.value("pattern", false);
      claimed.ssp = f.value("ssp", false);
      claimed.smp = f.value("smp", false);
      claimed.orthogonal = f.value("orthogonal", false);
    }
    return make_witness(j.value("id", std::string("witness")), g, a, claimed, j.value("source", std::string()));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("witness JSON: ") + e.what());
  }
}

std::string registry_to_json(const Registry& r, int indent) {
  ordered_json arr = ordered_json::array();
  for (const auto& w : r.all()) arr.push_back(witness_json(w));
  return dump(arr, indent);
}

std::string spectrum_to_json(const SpectrumSummary& s, int indent) { return dump(spectrum_json(s), indent); }

std::string report_to_json(const BoundReport& r, int indent) { return dump(report_json(r), indent); }

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string report_csv_header() { return "graph,graph6,n,m,lo,hi,determined,lower_citations,upper_citations"; }

std::string report_csv_row(const std::string& label, const BoundReport& r) {
  std::string lower, upper;
  for (const auto& c : r.contributions) {
    if (c.value != (c.direction == Direction::Lower ? r.lo : r.hi)) continue;
    auto& dst = c.direction == Direction::Lower ? lower : upper;
    dst += (dst.empty() ? "" : ";") + c.citation;
  }
  return csv_field(label) + "," + csv_field(to_graph6(r.graph)) + "," + std::to_string(r.graph.order()) + "," +
         std::to_string(r.graph.size()) + "," + std::to_string(r.lo) + "," + std::to_string(r.hi) + "," +
         (r.determined ? "true" : "false") + "," + csv_field(lower) + "," + csv_field(upper);
}

std::string realization_to_json(const RealizationResult& r, int indent) {
  ordered_json j{{"success", r.success},
                 {"start", r.start},
                 {"start_seed", std::to_string(r.start_seed)},
                 {"attempts", r.attempts},
                 {"best_residual", format_double(r.best_residual)},
                 {"message", r.message}};
  if (r.matrix) {
    j["matrix"] = matrix_json(*r.matrix);
    j["spectrum"] = spectrum_json(r.summary);
  }
  return dump(j, indent);
}

std::string conformance_to_json(const ConformanceReport& r, int indent) {
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) checks.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return dump(ordered_json{{"all_passed", r.all_passed()}, {"checks", std::move(checks)}}, indent);
}

}  // namespace qmin
