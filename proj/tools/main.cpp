// qmin command-line front end.
#include <cstdlib>
#include <fstream>
#include <map>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmin/bounds.hpp"
#include "qmin/canonical.hpp"
#include "qmin/catalog.hpp"
#include "qmin/constructions.hpp"
#include "qmin/error.hpp"
#include "qmin/families.hpp"
#include "qmin/graph_io.hpp"
#include "qmin/search.hpp"
#include "qmin/serialize.hpp"
#include "qmin/strongprops.hpp"

namespace {

using namespace qmin;

enum Exit { kOk = 0, kUsage = 1, kVerification = 2, kInconclusive = 3 };

struct GraphInput {
  std::string g6;
  std::vector<std::string> family;
  std::string catalog;
  bool from_stdin = false;
};

struct Common {
  std::string format = "json";
  double gap = 0.0;  // 0: relative default
  double rank_tol = kDefaultRankTol;
  double pattern_tol = kDefaultPatternTol;
  std::uint64_t seed = 1;
  int starts = 200;
  int iterations = 500;
  int threads = 0;
  SearchBudget budget() const { return {seed, starts, iterations, threads}; }
  std::optional<double> gap_opt() const { return gap > 0 ? std::optional<double>(gap) : std::nullopt; }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_graph_options(CLI::App* app, GraphInput& in) {
  app->add_option("--g6", in.g6, "graph in graph6 format");
  app->add_option("--family", in.family, "family name followed by integer parameters, e.g. --family cycle 8")
      ->expected(1, -1);
  app->add_option("--catalog", in.catalog, "catalog key: G37..G208, M_96, M_banner, C_hat_7, ...");
  app->add_flag("--stdin", in.from_stdin, "read graph6 from standard input (default when no other input is given)");
}

void add_common_options(CLI::App* app, Common& c, bool search) {
  app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app->add_option("--gap", c.gap, "eigenvalue clustering gap (default 1e-7*max(1,rho))");
  app->add_option("--rank-tol", c.rank_tol, "relative rank tolerance");
  app->add_option("--pattern-tol", c.pattern_tol, "zero tolerance for off-diagonal entries");
  if (search) {
    app->add_option("--seed", c.seed, "search seed (default from QMIN_SEED, else 1)");
    app->add_option("--starts", c.starts, "multi-start count");
    app->add_option("--iterations", c.iterations, "iterations per start");
    app->add_option("--threads", c.threads, "worker threads (0: all cores)");
  }
}

std::vector<int> parse_ints(const std::vector<std::string>& words, std::size_t from) {
  std::vector<int> out;
  for (std::size_t i = from; i < words.size(); ++i) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(words[i], &used));
      if (used != words[i].size()) throw std::invalid_argument(words[i]);
    } catch (const std::exception&) {
      throw UsageError("expected an integer parameter, got '" + words[i] + "'");
    }
  }
  return out;
}

// Catalog keys name either a table graph (G..) or a matrix; both resolve to a graph.
Graph catalog_graph(const std::string& key) {
  if (!key.empty() && key[0] == 'G') {
    const auto ig = identified_graph(key);
    if (!ig) throw Error(ErrorKind::UnknownKey, key + " has no identified structure (only its table value is known)");
    return ig->graph;
  }
  return support_graph(catalog_matrix(key));
}

Graph read_graph(const GraphInput& in) {
  const int sources = !in.g6.empty() + !in.family.empty() + !in.catalog.empty() + in.from_stdin;
  if (sources > 1) throw UsageError("give exactly one graph input (--g6, --family, --catalog or --stdin)");
  if (!in.g6.empty()) return from_graph6(in.g6);
  if (!in.family.empty()) {
    const auto fam = family_from_name(in.family.front());
    if (!fam) throw UsageError("unknown family '" + in.family.front() + "'");
    return make_family(*fam, parse_ints(in.family, 1));
  }
  if (!in.catalog.empty()) return catalog_graph(in.catalog);
  std::string line;
  while (std::getline(std::cin, line)) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (!line.empty()) return from_graph6(line);
  }
  throw UsageError("no graph given (use --g6, --family, --catalog or graph6 on stdin)");
}

std::string join_ids(const std::vector<int>& v, int offset) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + offset);
  return s;
}

std::vector<int> parse_vertex_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(parse_ints({item}, 0).front() - 1);
  }
  return out;
}

// ---- bounds -----------------------------------------------------------------

void print_report_text(std::ostream& os, const BoundReport& r) {
  os << describe(r.graph) << "\n";
  os << "q in [" << r.lo << ", " << r.hi << "]" << (r.determined ? " (determined)" : "") << "\n";
  for (const auto& c : r.contributions)
    os << "  " << direction_name(c.direction) << " " << c.value << "  " << c.citation << ": " << c.detail
       << (c.witness_id.empty() ? "" : " [" + c.witness_id + "]") << "\n";
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
}

int cmd_bounds(const GraphInput& in, const Common& c) {
  const Graph g = read_graph(in);
  const auto r = bound(g, catalog_registry());
  if (c.format == "json") std::cout << report_to_json(r, 2) << "\n";
  else if (c.format == "csv") std::cout << report_csv_header() << "\n" << report_csv_row(to_graph6(g), r) << "\n";
  else print_report_text(std::cout, r);
  return kOk;
}

// ---- construct --------------------------------------------------------------

ConstructionResult build(const std::vector<std::string>& spec, const Common& c) {
  if (spec.empty()) throw UsageError("construct needs a construction name");
  const std::string& kind = spec.front();
  const auto p = parse_ints(spec, 1);
  auto need = [&](std::size_t k) {
    if (p.size() != k) throw UsageError(kind + " expects " + std::to_string(k) + " parameter(s)");
  };
  if (kind == "flipped-cycle") return need(1), flipped_cycle(p[0]);
  if (kind == "complete") return need(1), complete_witness(p[0]);
  if (kind == "complete-bipartite") return need(2), complete_bipartite_witness(p[0], p[1]);
  if (kind == "clique-path") return clique_path_matrix(p);
  if (kind == "clique-star") return clique_star_matrix(p);
  if (kind == "kn-minus-e") return need(1), kn_minus_e_witness(p[0], c.budget());
  if (kind == "hypercube") return need(1), hypercube_witness(p[0], c.budget());
  if (kind == "tensor-path") return need(2), tensor_path_witness(p[0], p[1]);
  if (kind == "strong-path") return need(2), strong_path_witness(p[0], p[1], c.seed);
  if (kind == "strong-p3") return need(0), strong_p3_witness(strong_p3_factor(), path_graph(3));
  if (kind == "c4-tensor-path") {
    need(1);
    return c4_tensor_witness(SymMatrix::adjacency(path_graph(p[0])), path_graph(p[0]));
  }
  if (kind == "c4-cartesian-cycle") {
    need(1);
    return c4_cartesian_witness(flipped_cycle_matrix(p[0]), cycle_graph(p[0]));
  }
  if (kind == "c4-cartesian-path") {
    need(1);
    if (p[0] % 2 != 0) throw UsageError("c4-cartesian-path needs an even path order");
    std::vector<double> target;
    for (int j = p[0] / 2; j >= 1; --j) target.push_back(-j);
    for (int j = 1; j <= p[0] / 2; ++j) target.push_back(j);
    return c4_cartesian_witness(path_with_spectrum(target, false, c.seed), path_graph(p[0]));
  }
  throw UsageError("unknown construction '" + kind + "'");
}

int cmd_construct(const std::vector<std::string>& spec, const Common& c) {
  const auto r = build(spec, c);
  const auto w = make_witness(r.citation, r.graph, r.matrix, {.pattern = true}, r.citation);
  if (c.format == "text") {
    std::cout << r.citation << ": " << describe(r.graph) << "\nclaimed q <= " << r.claimed_q_upper
              << ", observed q = " << r.summary.q << ", multiplicities " << join_ids(r.summary.ordered_mult, 0) << "\n";
  } else {
    std::cout << witness_to_json(w, 2) << "\n";
  }
  return kOk;
}

// ---- search / augment -------------------------------------------------------

int cmd_search(const GraphInput& in, const Common& c, const std::string& mult, const std::string& values, bool ssp) {
  RealizationTask t;
  t.graph = read_graph(in);
  for (int m : parse_vertex_list(mult)) t.multiplicities.push_back(m + 1);
  if (t.multiplicities.empty()) throw UsageError("search needs --mult, e.g. --mult 2,2,2");
  if (!values.empty()) {
    std::vector<double> v;
    std::stringstream ss(values);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
    t.values = v;
  }
  t.require_ssp = ssp;
  t.seed = c.seed;
  t.starts = c.starts;
  t.iterations = c.iterations;
  t.threads = c.threads;
  const auto r = realize(t);
  if (c.format == "text") {
    std::cout << (r.success ? "found" : "inconclusive") << " after " << r.attempts << " start(s): " << r.message << "\n";
    if (r.success) std::cout << "multiplicities " << join_ids(r.summary.ordered_mult, 0) << "\n";
  } else if (r.success) {
    const auto w = make_witness("search", t.graph, *r.matrix, {.pattern = true, .ssp = ssp}, "numeric-search");
    std::cout << witness_to_json(w, 2) << "\n";
  } else {
    std::cout << realization_to_json(r, 2) << "\n";
  }
  return r.success ? kOk : kInconclusive;
}

std::pair<SymMatrix, Graph> read_matrix(const GraphInput& in, const std::string& matrix_file) {
  if (!matrix_file.empty()) {
    std::ifstream f(matrix_file);
    if (!f) throw UsageError("cannot open " + matrix_file);
    const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    const SymMatrix a = matrix_from_json(text);
    const bool explicit_graph = !in.g6.empty() || !in.family.empty() || in.from_stdin;
    return {a, explicit_graph ? read_graph(in) : support_graph(a)};
  }
  if (in.catalog.empty()) throw UsageError("give a matrix with --catalog KEY or --matrix FILE");
  const SymMatrix a = catalog_matrix(in.catalog);
  return {a, support_graph(a)};
}

int cmd_property(const GraphInput& in, const Common& c, const std::string& matrix_file, bool smp) {
  const auto [a, g] = read_matrix(in, matrix_file);
  const auto r = smp ? smp_report(a, g, c.rank_tol, c.pattern_tol) : ssp_report(a, g, c.rank_tol, c.pattern_tol);
  const auto s = spectrum_summary(a, c.gap_opt());
  const char* name = smp ? "SMP" : "SSP";
  if (c.format == "json") {
    std::cout << "{\"property\":\"" << name << "\",\"holds\":" << (r.holds ? "true" : "false")
              << ",\"unknowns\":" << r.unknowns << ",\"rank\":" << r.rank.rank << ",\"sigma_max\":\""
              << format_double(r.rank.sigma_max) << "\",\"smallest_retained\":\"" << format_double(r.rank.smallest_retained)
              << "\",\"largest_discarded\":\"" << format_double(r.rank.largest_discarded)
              << "\",\"graph6\":\"" << to_graph6(g) << "\",\"spectrum\":" << spectrum_to_json(s) << "}\n";
  } else {
    std::cout << name << ": " << (r.holds ? "true" : "false") << "\n";
    std::cout << "rank " << r.rank.rank << " of " << r.unknowns << " unknowns; q(A) = " << s.q << ", multiplicities "
              << join_ids(s.ordered_mult, 0) << "\n";
  }
  return kOk;
}

int cmd_augment(const GraphInput& in, const Common& c, const std::string& matrix_file, int cluster,
                const std::string& alpha) {
  const auto [a, g] = read_matrix(in, matrix_file);
  const auto set = parse_vertex_list(alpha);
  const auto r = augment(a, g, cluster - 1, set, c.budget());
  if (!r) {
    std::cerr << "augmentation search inconclusive\n";
    return kInconclusive;
  }
  const auto w = make_witness("augmented", r->graph, r->matrix, {.pattern = true, .ssp = true}, "augmentation");
  if (c.format == "text") {
    std::cout << describe(r->graph) << "\nmultiplicities " << join_ids(r->summary.ordered_mult, 0)
              << ", cluster drift " << format_double(cluster_preservation_error(a, r->matrix, cluster - 1)) << "\n";
  } else {
    std::cout << witness_to_json(w, 2) << "\n";
  }
  return kOk;
}

// ---- catalog / tables / enumerate -------------------------------------------

int cmd_catalog_verify(const Common& c) {
  const auto rep = verify_catalog(catalog_registry());
  if (c.format == "json") {
    std::cout << conformance_to_json(rep, 2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "check,passed,detail\n";
    for (const auto& k : rep.checks)
      std::cout << csv_field(k.name) << "," << (k.passed ? "true" : "false") << "," << csv_field(k.detail) << "\n";
  } else {
    for (const auto& k : rep.checks)
      std::cout << (k.passed ? "ok    " : "FAIL  ") << k.name << (k.detail.empty() ? "" : "  (" + k.detail + ")") << "\n";
    std::cout << (rep.all_passed() ? "catalog conforms" : "catalog has failures") << "\n";
  }
  return rep.all_passed() ? kOk : kVerification;
}

int cmd_tables_order(int n, const Common& c) {
  const auto& data = catalog_data();
  std::map<int, int> multiset;
  for (const auto* t : {&data.table2, &data.table4})
    for (const auto& e : *t)
      if (e.order == n) ++multiset[e.q];
  const auto v = table_consistency(n, multiset, catalog_registry());
  std::vector<std::string> named, bad;
  for (const auto& ig : data.graphs) {
    if (ig.graph.order() != n) continue;
    const auto pv = paper_value(ig.key);
    const auto r = bound(ig.graph, catalog_registry());
    (r.lo <= pv.q && pv.q <= r.hi ? named : bad).push_back(ig.key);
  }
  if (c.format == "csv") {
    std::cout << report_csv_header() << ",matched_value\n";
    for (std::size_t i = 0; i < v.reports.size(); ++i)
      std::cout << report_csv_row("graph" + std::to_string(i + 1), v.reports[i]) << ","
                << (v.assignment[i] >= 0 ? std::to_string(v.assignment[i]) : "") << "\n";
  } else if (c.format == "json") {
    std::cout << "{\"order\":" << n << ",\"graphs\":" << v.graphs << ",\"matched\":" << v.matched
              << ",\"determined\":" << v.determined << ",\"feasible\":" << (v.feasible ? "true" : "false")
              << ",\"named_verified\":" << named.size() << ",\"named_failed\":" << bad.size() << "}\n";
  } else {
    std::cout << "order " << n << ": " << v.graphs << " connected graphs, " << v.determined << " determined\n";
    std::cout << "matching " << (v.feasible ? "feasible" : "infeasible") << ": " << v.matched << "/" << v.graphs << "\n";
    std::cout << "named graphs verified: ";
    for (std::size_t i = 0; i < named.size(); ++i) std::cout << (i ? ", " : "") << named[i];
    std::cout << "\n";
    if (!bad.empty()) {
      std::cout << "named graphs outside their interval: ";
      for (std::size_t i = 0; i < bad.size(); ++i) std::cout << (i ? ", " : "") << bad[i];
      std::cout << "\n";
    }
  }
  return v.feasible && bad.empty() ? kOk : kVerification;
}

int cmd_tables_families(const Common& c, const std::string& row) {
  const auto cases = row.empty() ? family_table_cases() : family_table_cases(row);
  const auto out = evaluate_family_cases(cases, catalog_registry(), c.budget());
  int passed = 0;
  if (c.format == "csv") std::cout << "row,instance,expected,lo,hi,passed,note\n";
  for (const auto& o : out) {
    passed += o.passed;
    if (c.format == "csv") {
      std::cout << csv_field(o.row) << "," << csv_field(o.name) << "," << o.expected << "," << o.report.lo << ","
                << o.report.hi << "," << (o.passed ? "true" : "false") << "," << csv_field(o.note) << "\n";
    } else if (c.format == "text") {
      std::cout << (o.passed ? "ok    " : "FAIL  ") << o.name << "  expected " << o.expected << ", interval ["
                << o.report.lo << ", " << o.report.hi << "]" << (o.note.empty() ? "" : "  " + o.note) << "\n";
    }
  }
  if (c.format == "json") {
    std::cout << "[";
    for (std::size_t i = 0; i < out.size(); ++i)
      std::cout << (i ? "," : "") << "\n {\"row\":\"" << out[i].row << "\",\"instance\":\"" << out[i].name
                << "\",\"expected\":" << out[i].expected << ",\"lo\":" << out[i].report.lo
                << ",\"hi\":" << out[i].report.hi << ",\"passed\":" << (out[i].passed ? "true" : "false") << "}";
    std::cout << "\n]\n";
  } else if (c.format == "text") {
    std::cout << passed << "/" << out.size() << " family instances match\n";
  }
  return passed == static_cast<int>(out.size()) ? kOk : kVerification;
}

int cmd_enumerate(int n, bool with_bounds, const Common& c) {
  const auto graphs = enumerate_connected(n);
  if (with_bounds && c.format == "csv") std::cout << report_csv_header() << "\n";
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (!with_bounds) {
      std::cout << to_graph6(graphs[i]) << "\n";
      continue;
    }
    const auto r = bound(graphs[i], catalog_registry());
    if (c.format == "csv") std::cout << report_csv_row(std::to_string(i + 1), r) << "\n";
    else if (c.format == "json") std::cout << report_to_json(r) << "\n";
    else std::cout << to_graph6(graphs[i]) << "  [" << r.lo << ", " << r.hi << "]\n";
  }
  return kOk;
}

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::VerificationFailed:
    case ErrorKind::CatalogCorrupt:
    case ErrorKind::HypothesisNotSatisfied:
    case ErrorKind::DegreeConditionViolated:
    case ErrorKind::InfeasibleReport:
      return kVerification;
    case ErrorKind::RealizationFailed:
    case ErrorKind::ConvergenceFailure:
      return kInconclusive;
    default:
      return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified bounds on the minimum number of distinct eigenvalues of a graph"};
  app.require_subcommand(1);
  Common common;
  if (const char* env = std::getenv("QMIN_SEED")) {
    try {
      common.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring non-numeric QMIN_SEED\n";
    }
  }
  GraphInput in;
  std::string matrix_file, mult, values, alpha, row;
  std::vector<std::string> spec;
  bool ssp_flag = false, with_bounds = false, families = false;
  int cluster = 1, order = 0;

  auto* bounds = app.add_subcommand("bounds", "lower and upper bounds with their reasons");
  add_graph_options(bounds, in);
  add_common_options(bounds, common, false);

  auto* construct = app.add_subcommand("construct", "build a witness: NAME PARAMS...");
  construct->add_option("spec", spec,
                        "flipped-cycle s | complete n | complete-bipartite m n | clique-path n1.. | clique-star n1.. | "
                        "kn-minus-e n | hypercube d | tensor-path s t | strong-path s t | strong-p3 | c4-tensor-path s | "
                        "c4-cartesian-cycle s | c4-cartesian-path s")
      ->required();
  add_common_options(construct, common, true);

  auto* search = app.add_subcommand("search", "numeric search for a matrix with a multiplicity list");
  add_graph_options(search, in);
  add_common_options(search, common, true);
  search->add_option("--mult", mult, "ordered multiplicity list, e.g. 2,2,2")->required();
  search->add_option("--values", values, "exact ascending distinct eigenvalues, comma separated");
  search->add_flag("--ssp", ssp_flag, "require SSP");

  auto* ssp = app.add_subcommand("ssp", "strong spectral property of a matrix");
  auto* smp = app.add_subcommand("smp", "strong multiplicity property of a matrix");
  for (auto* sub : {ssp, smp}) {
    add_graph_options(sub, in);
    add_common_options(sub, common, false);
    sub->add_option("--matrix", matrix_file, "matrix JSON file {n, rows}");
  }

  auto* aug = app.add_subcommand("augment", "add a vertex adjacent to ALPHA, raising one eigenvalue's multiplicity");
  add_graph_options(aug, in);
  add_common_options(aug, common, true);
  aug->add_option("--matrix", matrix_file, "matrix JSON file {n, rows}");
  aug->add_option("--cluster", cluster, "1-based index of the eigenvalue (ascending)")->required();
  aug->add_option("--alpha", alpha, "1-based vertices for the new vertex, e.g. 2,3")->required();

  auto* cat = app.add_subcommand("catalog", "catalog operations");
  auto* cat_verify = cat->add_subcommand("verify", "re-run all catalog checks");
  cat->require_subcommand(1);
  auto* cat_verify2 = app.add_subcommand("catalog-verify", "re-run all catalog checks");
  for (auto* sub : {cat_verify, cat_verify2}) add_common_options(sub, common, false);

  auto* tables = app.add_subcommand("tables", "reproduce the small-graph and family tables");
  tables->add_option("--order", order, "graph order 1..6")->check(CLI::Range(1, 6));
  tables->add_flag("--families", families, "family-formula table");
  tables->add_option("--row", row, "restrict the family table to rows starting with this label");
  add_common_options(tables, common, true);

  auto* enumerate = app.add_subcommand("enumerate", "connected graphs of one order (graph6)");
  enumerate->add_option("--order", order, "graph order 1..7")->required()->check(CLI::Range(1, 7));
  enumerate->add_flag("--bounds", with_bounds, "print bound intervals too");
  add_common_options(enumerate, common, false);

  // Text output for ssp/smp unless asked otherwise.
  for (auto* sub : {ssp, smp, tables, cat_verify, cat_verify2}) sub->get_option("--format")->default_val("text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*bounds) return cmd_bounds(in, common);
    if (*construct) return cmd_construct(spec, common);
    if (*search) return cmd_search(in, common, mult, values, ssp_flag);
    if (*ssp) return cmd_property(in, common, matrix_file, false);
    if (*smp) return cmd_property(in, common, matrix_file, true);
    if (*aug) return cmd_augment(in, common, matrix_file, cluster, alpha);
    if (*cat_verify || *cat_verify2) return cmd_catalog_verify(common);
    if (*tables) {
      if (families == (order != 0)) throw UsageError("tables needs exactly one of --order N or --families");
      return families ? cmd_tables_families(common, row) : cmd_tables_order(order, common);
    }
    if (*enumerate) return cmd_enumerate(order, with_bounds, common);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
