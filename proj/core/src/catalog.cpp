#include "qmin/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qmin/canonical.hpp"
#include "qmin/constructions.hpp"
#include "qmin/error.hpp"
#include "qmin/expression.hpp"
#include "qmin_catalog_data.hpp"

namespace qmin {
namespace {

using nlohmann::json;

[[noreturn]] void corrupt(const std::string& why) { throw Error(ErrorKind::CatalogCorrupt, "catalog: " + why); }

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

double eval_entry(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) corrupt("matrix entry is neither a number nor an expression");
  try {
    return evaluate_expression(j.get<std::string>());
  } catch (const Error& e) {
    corrupt(e.what());
  }
}

std::vector<int> zero_based(const json& j) {
  std::vector<int> out;
  for (const auto& v : j) out.push_back(v.get<int>() - 1);
  return out;
}

Graph edges_graph(const json& edges, int n) {
  Graph g(n);
  for (const auto& e : edges) g.add_edge(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);
  return g;
}

int max_vertex(const json& edges) {
  int n = 0;
  for (const auto& e : edges) n = std::max({n, e.at(0).get<int>(), e.at(1).get<int>()});
  return n;
}

Graph family_graph(const std::string& name, const std::vector<int>& params) {
  const auto fam = family_from_name(name);
  if (!fam) corrupt("unknown family '" + name + "'");
  return make_family(*fam, params);
}

WitnessFlags parse_claims(const json& claims) {
  WitnessFlags f;
  f.pattern = true;
  for (const auto& c : claims) {
    const auto s = c.get<std::string>();
    if (s == "ssp") f.ssp = true;
    else if (s == "smp") f.smp = true;
    else if (s == "orthogonal") f.orthogonal = true;
    else corrupt("unknown claim '" + s + "'");
  }
  return f;
}

}  // namespace

int table_key_order(const std::string& key) {
  if (key.size() < 2 || key[0] != 'G') throw Error(ErrorKind::UnknownKey, "not a table key: " + key);
  int idx = 0;
  try {
    idx = std::stoi(key.substr(1));
  } catch (const std::exception&) {
    throw Error(ErrorKind::UnknownKey, "not a table key: " + key);
  }
  // Counts of all graphs on 0..6 vertices are 1, 1, 2, 4, 11, 34, 156 (G0 is the null graph).
  static constexpr int kLast[] = {0, 1, 3, 7, 18, 52, 208};
  for (int n = 1; n <= 6; ++n)
    if (idx > kLast[n - 1] && idx <= kLast[n]) return n;
  throw Error(ErrorKind::UnknownKey, "table key out of range: " + key);
}

CatalogData parse_catalog(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    corrupt(std::string("invalid JSON: ") + e.what());
  }
  CatalogData data;
  try {
    for (const auto& m : doc.at("matrices")) {
      CatalogMatrix cm;
      cm.key = m.at("key").get<std::string>();
      cm.graph_key = m.at("graph").get<std::string>();
      const auto& rows = m.at("rows");
      const int n = static_cast<int>(rows.size());
      Matrix dense(n, n);
      for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) corrupt(cm.key + ": matrix is not square");
        for (int j = 0; j < n; ++j) dense(i, j) = eval_entry(rows[i][j]);
      }
      try {
        cm.matrix = SymMatrix::from_dense(dense, 1e-14 * std::max(1.0, dense.cwiseAbs().maxCoeff()));
      } catch (const Error&) {
        corrupt(cm.key + ": matrix is not symmetric");
      }
      for (const auto& v : m.at("spectrum")) cm.spectrum.push_back(eval_entry(v));
      std::sort(cm.spectrum.begin(), cm.spectrum.end());
      if (static_cast<int>(cm.spectrum.size()) != n) corrupt(cm.key + ": spectrum length differs from order");
      cm.claimed = parse_claims(m.at("claims"));
      cm.source = m.at("source").get<std::string>();
      data.matrices.push_back(std::move(cm));
    }
    for (const auto& a : doc.at("augmented")) {
      AugmentedSpec s;
      s.key = a.at("key").get<std::string>();
      s.base = a.at("base").get<std::string>();
      s.cluster = a.at("cluster").get<int>();
      s.alpha = zero_based(a.at("alpha"));
      s.multiplicities = a.at("multiplicities").get<std::vector<int>>();
      s.source = a.at("source").get<std::string>();
      data.augmented.push_back(std::move(s));
    }
    for (const auto& g : doc.at("graphs")) {
      IdentifiedGraph ig;
      ig.key = g.at("key").get<std::string>();
      ig.how = g.at("how").get<std::string>();
      const int order = table_key_order(ig.key);
      if (g.contains("matrix")) {
        const auto key = g.at("matrix").get<std::string>();
        auto it = std::find_if(data.matrices.begin(), data.matrices.end(), [&](const auto& m) { return m.key == key; });
        if (it == data.matrices.end()) corrupt(ig.key + ": unknown matrix " + key);
        ig.graph = support_graph(it->matrix);
      } else if (g.contains("edges")) {
        if (max_vertex(g.at("edges")) > order) corrupt(ig.key + ": edge endpoint beyond the graph order");
        ig.graph = edges_graph(g.at("edges"), order);
      } else if (g.contains("family")) {
        ig.graph = family_graph(g.at("family").get<std::string>(), g.at("params").get<std::vector<int>>());
      } else if (g.contains("product")) {
        const auto kind = g.at("product").get<std::string>();
        const auto& f = g.at("factors");
        const Graph a = family_graph(f.at(0).at(0).get<std::string>(), f.at(0).at(1).get<std::vector<int>>());
        const Graph b = family_graph(f.at(1).at(0).get<std::string>(), f.at(1).at(1).get<std::vector<int>>());
        const ProductKind pk = kind == "cartesian" ? ProductKind::Cartesian
                               : kind == "tensor"  ? ProductKind::Tensor
                               : kind == "strong"  ? ProductKind::Strong
                                                   : (corrupt("unknown product " + kind), ProductKind::Cartesian);
        ig.graph = product(pk, a, b);
      } else {
        corrupt(ig.key + ": no structure given");
      }
      if (ig.graph.order() != order) corrupt(ig.key + ": structure has the wrong order");
      data.graphs.push_back(std::move(ig));
    }
    auto read_table = [](const json& t, std::vector<TableEntry>& out, const std::string& default_reason) {
      for (const auto& e : t) {
        TableEntry te;
        te.key = e.at("key").get<std::string>();
        te.order = table_key_order(te.key);
        te.q = e.at("q").get<int>();
        te.reason = e.contains("reason") ? e.at("reason").get<std::string>()
                    : e.contains("note") ? e.at("note").get<std::string>()
                                         : default_reason;
        out.push_back(std::move(te));
      }
    };
    read_table(doc.at("table2"), data.table2, "small-order table");
    read_table(doc.at("table4"), data.table4, "order-6 table");
    read_table(doc.at("asserted"), data.asserted, "paper-asserted, not re-derived");
    for (const auto& s : doc.at("independent_sets"))
      data.independent_sets.push_back({s.at("graph").get<std::string>(), zero_based(s.at("set"))});
  } catch (const json::exception& e) {
    corrupt(std::string("malformed entry: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CatalogCorrupt) throw;
    corrupt(e.what());
  }
  return data;
}

const CatalogData& catalog_data() {
  static const CatalogData data = parse_catalog(detail::kEmbeddedCatalog);
  return data;
}

const CatalogMatrix& catalog_entry(const std::string& key) {
  for (const auto& m : catalog_data().matrices)
    if (m.key == key) return m;
  throw Error(ErrorKind::UnknownKey, "no catalog matrix " + key);
}

SymMatrix catalog_matrix(const std::string& key) {
  if (key.rfind("C_hat_", 0) == 0) {
    try {
      return flipped_cycle_matrix(std::stoi(key.substr(6)));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::UnknownKey, "bad flipped-cycle key " + key);
    }
  }
  return catalog_entry(key).matrix;
}

std::optional<IdentifiedGraph> identified_graph(const std::string& key) {
  for (const auto& g : catalog_data().graphs)
    if (g.key == key) return g;
  return std::nullopt;
}

PaperValue paper_value(const std::string& key) {
  const auto& d = catalog_data();
  for (const auto* table : {&d.table2, &d.table4})
    for (const auto& e : *table)
      if (e.key == key) return {e.q, e.reason};
  throw Error(ErrorKind::UnknownKey, "no table value for " + key);
}

double cluster_preservation_error(const SymMatrix& base, const SymMatrix& augmented, int cluster) {
  const auto b = spectrum_summary(base);
  const auto a = spectrum_summary(augmented);
  if (cluster < 0 || cluster >= b.q) throw Error(ErrorKind::MissingElement, "cluster index out of range");
  if (a.q != b.q) return std::numeric_limits<double>::infinity();
  double err = 0.0;
  for (int i = 0; i < b.q; ++i) {
    const int want = b.clusters[i].multiplicity + (i == cluster ? 1 : 0);
    if (a.clusters[i].multiplicity != want) return std::numeric_limits<double>::infinity();
    err = std::max(err, std::abs(a.clusters[i].value - b.clusters[i].value));
  }
  return err;
}

namespace {

Graph base_graph(const std::string& base) { return support_graph(catalog_matrix(base)); }

AugmentResult run_augmentation(const AugmentedSpec& s, const SearchBudget& budget) {
  const SymMatrix a = catalog_matrix(s.base);
  const Graph g = base_graph(s.base);
  const auto res = augment(a, g, s.cluster, s.alpha, budget);
  if (!res) corrupt(s.key + ": augmentation search was inconclusive");
  if (res->summary.ordered_mult != s.multiplicities) corrupt(s.key + ": augmented multiplicity list differs");
  if (cluster_preservation_error(a, res->matrix, s.cluster) > 1e-6) corrupt(s.key + ": augmentation moved an eigenvalue");
  return *res;
}

void add_construction(Registry& reg, const std::string& id, const ConstructionResult& c, WitnessFlags claimed = {}) {
  claimed.pattern = true;
  register_witness(reg, id, c.graph, c.matrix, claimed, c.citation);
}

// Size lists with s >= 2 parts, each >= 2, up to the given total order.
std::vector<std::vector<int>> clique_size_lists(int max_order, bool path_like) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto order_of = [&](const std::vector<int>& v) {
    int sum = 0;
    for (int x : v) sum += x - 1;
    return sum + 1;
  };
  auto rec = [&](auto&& self, int min_part) -> void {
    if (cur.size() >= 2) out.push_back(cur);
    for (int p = path_like ? 2 : min_part; p <= max_order; ++p) {
      cur.push_back(p);
      if (order_of(cur) <= max_order) self(self, p);
      cur.pop_back();
    }
  };
  rec(rec, 2);
  return out;
}

void register_family_witnesses(Registry& reg, const SearchBudget& budget) {
  for (int n = 2; n <= 8; ++n) add_construction(reg, "J_" + std::to_string(n), complete_witness(n));
  for (int m = 1; m <= 5; ++m)
    for (int n = std::max(m, 2); n <= 5; ++n)
      add_construction(reg, "K_" + std::to_string(m) + "," + std::to_string(n), complete_bipartite_witness(m, n));
  for (int n = 4; n <= 7; ++n)
    add_construction(reg, "K_" + std::to_string(n) + "-e", kn_minus_e_witness(n, budget), {.ssp = true});
  for (int d = 1; d <= 3; ++d) add_construction(reg, "Q_" + std::to_string(d), hypercube_witness(d, budget));
  for (const auto& sizes : clique_size_lists(6, true))
    add_construction(reg, "KP(" + join_ints(sizes) + ")", clique_path_matrix(sizes));
  for (const auto& sizes : clique_size_lists(6, false))
    add_construction(reg, "KS(" + join_ints(sizes) + ")", clique_star_matrix(sizes));
  const SymMatrix b = strong_p3_factor();
  add_construction(reg, "P3-strong-P3", strong_p3_witness(b, path_graph(3)));
}

}  // namespace

Registry load_catalog(const CatalogOptions& options) {
  const auto& data = catalog_data();
  Registry reg;
  for (const auto& m : data.matrices) {
    const auto s = spectrum_summary(m.matrix);
    for (std::size_t i = 0; i < m.spectrum.size(); ++i)
      if (std::abs(s.eigenvalues[i] - m.spectrum[i]) > 1e-8)
        corrupt(m.key + ": spectrum differs from the stated one");
    try {
      register_witness(reg, m.key, support_graph(m.matrix), m.matrix, m.claimed, m.source);
    } catch (const Error& e) {
      corrupt(m.key + ": " + e.what());
    }
  }
  for (int n = 3; n <= 12; ++n) {
    const auto c = flipped_cycle(n);
    try {
      add_construction(reg, "C_hat_" + std::to_string(n), c, {.smp = true});
    } catch (const Error& e) {
      corrupt("C_hat_" + std::to_string(n) + ": " + e.what());
    }
  }
  for (const auto& s : data.augmented) {
    AugmentResult r;
    try {
      r = run_augmentation(s, options.budget);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::CatalogCorrupt) throw;
      corrupt(s.key + ": " + e.what());
    }
    try {
      register_witness(reg, "aug_" + s.key, r.graph, r.matrix, {.pattern = true, .ssp = true}, s.source);
    } catch (const Error& e) {
      corrupt(s.key + ": " + e.what());
    }
  }
  if (options.family_witnesses) {
    try {
      register_family_witnesses(reg, options.budget);
    } catch (const Error& e) {
      corrupt(std::string("family witness: ") + e.what());
    }
  }
  return reg;
}

const Registry& catalog_registry() {
  static const Registry reg = load_catalog();
  return reg;
}

bool ConformanceReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

ConformanceReport verify_catalog(const Registry& registry, double spectrum_tol) {
  const auto& data = catalog_data();
  ConformanceReport rep;
  auto add = [&](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  auto fmt = [](double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
  };

  for (const auto& m : data.matrices) {
    const auto s = spectrum_summary(m.matrix);
    double dev = 0.0;
    for (std::size_t i = 0; i < m.spectrum.size(); ++i) dev = std::max(dev, std::abs(s.eigenvalues[i] - m.spectrum[i]));
    add(m.key + " spectrum", dev <= spectrum_tol, "max deviation " + fmt(dev) + ", multiplicities " + join_ints(s.ordered_mult));
    const Graph g = support_graph(m.matrix);
    add(m.key + " pattern", is_connected(g) && (g.order() == 5 || g.order() == 6),
        "support is " + std::string(is_connected(g) ? "connected" : "disconnected") + " on " + std::to_string(g.order()) +
            " vertices");
    if (m.claimed.ssp) {
      const auto r = ssp_report(m.matrix, g);
      add(m.key + " SSP", r.holds, "rank " + std::to_string(r.rank.rank) + " of " + std::to_string(r.unknowns));
    }
    if (m.claimed.orthogonal) {
      const Matrix d = m.matrix.dense();
      const double err = (d * d - Matrix::Identity(d.rows(), d.cols())).cwiseAbs().maxCoeff();
      add(m.key + " orthogonal", err <= 1e-8 && is_orthogonal_witness(m.matrix, g), "max |M^2 - I| = " + fmt(err));
    }
    add(m.key + " registered", registry.find(m.key).has_value(), "");
  }
  for (int n = 3; n <= 12; ++n) {
    const SymMatrix c = flipped_cycle_matrix(n);
    const auto r = smp_report(c, cycle_graph(n));
    const auto s = spectrum_summary(c);
    const auto want = flipped_cycle_spectrum(n);
    double dev = 0.0;
    for (int i = 0; i < n; ++i) dev = std::max(dev, std::abs(s.eigenvalues[i] - want[i]));
    add("C_hat_" + std::to_string(n) + " SMP", r.holds && dev <= spectrum_tol,
        "rank " + std::to_string(r.rank.rank) + " of " + std::to_string(r.unknowns) + ", spectrum deviation " + fmt(dev));
  }
  for (const auto& s : data.augmented) {
    const auto rec = registry.find("aug_" + s.key);
    if (!rec) {
      add(s.key + " augmented witness", false, "not registered");
      continue;
    }
    const auto ig = identified_graph(s.key);
    const bool shape = ig && is_isomorphic(ig->graph, rec->graph);
    const double err = cluster_preservation_error(catalog_matrix(s.base), rec->matrix, s.cluster);
    const bool ok = shape && rec->verified.ssp && rec->summary.ordered_mult == s.multiplicities && err <= 1e-6;
    add(s.key + " augmented witness", ok,
        "multiplicities " + join_ints(rec->summary.ordered_mult) + ", SSP " + (rec->verified.ssp ? "true" : "false") +
            ", cluster drift " + fmt(err) + (shape ? "" : ", graph differs from identification"));
  }
  {
    std::set<std::string> keys;
    bool distinct = true;
    for (const auto& g : data.graphs) distinct &= keys.insert(canonical_key(g.graph)).second;
    add("identified graphs pairwise non-isomorphic", distinct, std::to_string(data.graphs.size()) + " graphs");
  }
  {
    std::map<int, int> per_order;
    for (const auto& e : data.table2) ++per_order[e.order];
    bool ok = data.table2.size() == 31;
    for (const auto& [n, count] : per_order) ok &= count == static_cast<int>(enumerate_connected(n).size());
    add("small-order table size", ok, std::to_string(data.table2.size()) + " entries");
    add("order-6 table size", data.table4.size() == 112 && enumerate_connected(6).size() == 112,
        std::to_string(data.table4.size()) + " entries");
  }
  for (const auto& a : data.asserted) {
    bool ok = false;
    try {
      ok = paper_value(a.key).q == a.q;
    } catch (const Error&) {
    }
    add(a.key + " asserted value " + std::to_string(a.q), ok, a.reason);
  }
  for (const auto& c : data.independent_sets) {
    const auto ig = identified_graph(c.graph_key);
    const bool ok = ig && check_independent_set(ig->graph, c.set).has_value();
    std::vector<int> one_based = c.set;
    for (int& v : one_based) ++v;
    add(c.graph_key + " independent-set obstruction", ok, "set " + join_ints(one_based));
  }
  return rep;
}

}  // namespace qmin
