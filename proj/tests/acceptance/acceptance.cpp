// Acceptance run: one PASS/FAIL line per criterion, with the evidence printed above it.
// Usage: qmin_acceptance [criterion ...]   (no arguments runs all eight)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qmin/bounds.hpp"
#include "qmin/canonical.hpp"
#include "qmin/catalog.hpp"
#include "qmin/constructions.hpp"
#include "qmin/error.hpp"
#include "qmin/families.hpp"
#include "qmin/graph_io.hpp"
#include "qmin/search.hpp"
#include "qmin/strongprops.hpp"

using namespace qmin;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string mult_string(const std::vector<int>& m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
  return s + ")";
}

std::string interval(const BoundReport& r) { return "[" + std::to_string(r.lo) + "," + std::to_string(r.hi) + "]"; }

struct Tally {
  int checks = 0;
  int failed = 0;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failed;
      std::cout << "    failed: " << what << "\n";
    }
  }
  bool ok() const { return failed == 0; }
};

// ---- 1 -------------------------------------------------------------------------

bool catalog_conformance() {
  const auto t0 = Clock::now();
  Tally t;
  const double r3 = std::sqrt(3.0);
  const std::map<std::string, std::vector<double>> stated = {
      {"M_96", {-1, -1, 0, 0, 2, 2}},
      {"M_99", {-r3, -r3, 0, 0, r3, r3}},
      {"M_115", {-1 - 2 * r3, -1 - 2 * r3, 0, 0, -1 + 2 * r3, -1 + 2 * r3}},
      {"M_banner", {-2.0 / 3, -2.0 / 3, 0, 2, 2}},
  };
  for (const auto& [key, want] : stated) {
    const auto ev = oracle::eigenvalues(catalog_matrix(key).dense());
    double err = 0;
    for (std::size_t i = 0; i < want.size(); ++i) err = std::max(err, std::abs(ev[i] - want[i]));
    std::printf("    %-9s spectrum deviation %.2e\n", key.c_str(), err);
    t.expect(ev.size() == want.size() && err <= 1e-8, key + " spectrum");
  }
  for (const char* key : {"M_154", "M_168", "M_174", "M_181", "M_186"}) {
    const SymMatrix m = catalog_matrix(key);
    const auto s = spectrum_summary(m);
    const double orth = (m.dense() * m.dense() - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff();
    std::printf("    %-9s |M^2-I| %.2e  m=%s\n", key, orth, mult_string(s.ordered_mult).c_str());
    t.expect(is_orthogonal_witness(m, support_graph(m)) && orth <= 1e-8 && s.ordered_mult == std::vector<int>{3, 3},
             std::string(key) + " orthogonal with m=(3,3)");
  }
  for (const char* key : {"M_96", "M_banner", "M_174", "M_186", "M_48"}) {
    const SymMatrix m = catalog_matrix(key);
    const auto rep = ssp_report(m, support_graph(m));
    std::printf("    %-9s SSP rank %d of %d\n", key, rep.rank.rank, rep.unknowns);
    t.expect(rep.holds, std::string(key) + " SSP");
  }
  const auto smp = smp_report(catalog_matrix("C_hat_5"), cycle_graph(5));
  std::printf("    C_hat_5   SMP rank %d of %d\n", smp.rank.rank, smp.unknowns);
  t.expect(smp.holds, "C_hat_5 SMP");

  const auto report = verify_catalog(catalog_registry());
  int passed = 0;
  for (const auto& c : report.checks) {
    passed += c.passed;
    if (!c.passed) std::cout << "    conformance check failed: " << c.name << " " << c.detail << "\n";
  }
  std::printf("    full conformance report: %d/%zu checks\n", passed, report.checks.size());
  t.expect(report.all_passed(), "conformance report");
  const double secs = seconds_since(t0);
  std::printf("    runtime %.2f s (limit 5 s)\n", secs);
  t.expect(secs < 5.0, "runtime");
  return t.ok();
}

// ---- 2 -------------------------------------------------------------------------

bool family_table() {
  const auto t0 = Clock::now();
  const auto cases = family_table_cases();
  const auto outcomes = evaluate_family_cases(cases, catalog_registry());
  std::map<std::string, std::pair<int, int>> rows;  // passed, total
  std::vector<std::string> order;
  int passed = 0;
  for (const auto& o : outcomes) {
    if (!rows.count(o.row)) order.push_back(o.row);
    auto& r = rows[o.row];
    ++r.second;
    if (o.passed) {
      ++r.first, ++passed;
    } else {
      std::cout << "    FAIL " << o.name << ": expected " << o.expected << ", engine " << interval(o.report)
                << (o.note.empty() ? "" : " (" + o.note + ")") << "\n";
    }
  }
  for (const auto& row : order)
    std::printf("    %-22s %d/%d\n", row.c_str(), rows[row].first, rows[row].second);
  const double secs = seconds_since(t0);
  std::printf("    %d/%zu instances match; runtime %.1f s (limit 300 s)\n", passed, outcomes.size(), secs);
  return passed == static_cast<int>(outcomes.size()) && secs < 300;
}

// ---- 3, 4 ----------------------------------------------------------------------

std::map<int, int> multiset(const std::vector<TableEntry>& table, int order) {
  std::map<int, int> m;
  for (const auto& e : table)
    if (e.order == order) ++m[e.q];
  return m;
}

bool small_orders() {
  Tally t;
  const auto& data = catalog_data();
  int graphs = 0, determined = 0;
  for (int n = 1; n <= 5; ++n) {
    const auto v = table_consistency(n, multiset(data.table2, n), catalog_registry());
    std::printf("    order %d: %d graphs, matching %d/%d, determined %d\n", n, v.graphs, v.matched, v.graphs, v.determined);
    t.expect(v.feasible, "matching at order " + std::to_string(n));
    graphs += v.graphs;
    determined += v.determined;
  }
  std::printf("    total %d graphs, %d determined (need >= 25)\n", graphs, determined);
  t.expect(graphs == 31, "31 graphs");
  t.expect(determined >= 25, "determined count");
  return t.ok();
}

bool order_six() {
  const auto t0 = Clock::now();
  Tally t;
  const auto& data = catalog_data();
  const Registry& reg = catalog_registry();
  const auto all = enumerate_connected(6);
  t.expect(all.size() == 112u, "112 graphs");
  const auto v = table_consistency(6, multiset(data.table4, 6), reg);
  std::printf("    enumeration %zu graphs, matching %d/%d, determined %d\n", all.size(), v.matched, v.graphs, v.determined);
  t.expect(v.feasible, "matching");

  std::set<std::string> asserted;
  for (const auto& a : data.asserted) asserted.insert(a.key);
  std::set<std::string> augmented;
  for (const auto& a : data.augmented) augmented.insert(a.key);

  int identified = 0, constructive = 0;
  for (const auto& ig : data.graphs) {
    if (ig.graph.order() != 6) continue;
    ++identified;
    const int q = paper_value(ig.key).q;
    const auto r = bound(ig.graph, reg);
    const bool inside = r.lo <= q && q <= r.hi;
    // Constructive: matrix- and figure-defined graphs, augmented witnesses and the family
    // identifications. G187/G189 (values asserted, not re-derived) and the two trees whose
    // identity is inferred only are held to containment.
    const bool inferred_tree = ig.how == "inferred" && ig.graph.size() == 5;
    const bool needs_exact = !asserted.count(ig.key) && !inferred_tree;
    const bool exact = r.lo == q && r.hi == q;
    std::printf("    %-5s %-8s table %d  engine %-6s %s\n", ig.key.c_str(), ig.how.c_str(), q, interval(r).c_str(),
                needs_exact ? (exact ? "exact" : "NOT EXACT") : (inside ? "contains" : "OUTSIDE"));
    t.expect(inside, ig.key + " contains its value");
    if (needs_exact) {
      ++constructive;
      t.expect(exact, ig.key + " determined at its value");
    }
  }
  for (const auto& key : augmented) t.expect(identified_graph(key).has_value(), key + " identified");
  std::printf("    %d identified order-6 graphs (need >= 30), %d held to lo = hi\n", identified, constructive);
  t.expect(identified >= 30, "identified count");
  const double secs = seconds_since(t0);
  std::printf("    runtime %.1f s (limit 1800 s)\n", secs);
  t.expect(secs < 1800, "runtime");
  return t.ok();
}

// ---- 5 -------------------------------------------------------------------------

bool augmentation() {
  Tally t;
  for (const auto& spec : catalog_data().augmented) {
    const SymMatrix base = catalog_matrix(spec.base);
    const Graph g = support_graph(base);
    SearchBudget budget;
    budget.seed = 1;
    const auto res = augment(base, g, spec.cluster, spec.alpha, budget);
    if (!res) {
      std::cout << "    " << spec.key << ": search inconclusive\n";
      t.expect(false, spec.key + " augmentation");
      continue;
    }
    const bool ssp = has_ssp(res->matrix, res->graph);
    const double drift = cluster_preservation_error(base, res->matrix, spec.cluster);
    const auto target = identified_graph(spec.key);
    const bool same_graph = target && is_isomorphic(target->graph, res->graph);
    std::printf("    %-5s from %-9s m=%s SSP %s drift %.1e graph %s\n", spec.key.c_str(), spec.base.c_str(),
                mult_string(res->summary.ordered_mult).c_str(), ssp ? "yes" : "no", drift,
                same_graph ? "matches" : "differs");
    t.expect(in_pattern(res->matrix, res->graph), spec.key + " pattern");
    t.expect(ssp, spec.key + " SSP");
    t.expect(res->summary.ordered_mult == spec.multiplicities, spec.key + " multiplicities");
    t.expect(drift <= 1e-6, spec.key + " cluster preservation");
    t.expect(same_graph, spec.key + " graph");
  }
  std::set<std::vector<int>> lists;
  for (const auto& spec : catalog_data().augmented) lists.insert(spec.multiplicities);
  t.expect(lists.count({2, 2, 2}) && lists.count({3, 3}), "targets cover (2,2,2) and (3,3)");
  return t.ok();
}

// ---- 6 -------------------------------------------------------------------------

bool independent_sets() {
  Tally t;
  for (const auto& c : catalog_data().independent_sets) {
    const Graph g = identified_graph(c.graph_key)->graph;
    const auto v = check_independent_set(g, c.set);
    const auto r = bound(g, catalog_registry());
    std::vector<int> s1 = c.set, u1 = v ? v->common : std::vector<int>{};
    for (int& x : s1) ++x;
    for (int& x : u1) ++x;
    std::cout << "    " << c.graph_key << " set " << mult_string(s1) << " common " << mult_string(u1) << " lo "
              << r.lo << "\n";
    t.expect(v.has_value(), c.graph_key + " violation");
    t.expect(r.lo >= 3, c.graph_key + " lo >= 3");
  }
  // Q_5 v P_2 with S = {00000, 00111, 11110}; hypercube vertex index = bit string
  const Graph q5p2 = join(make_family(Family::Hypercube, {5}), path_graph(2));
  const auto v = check_independent_set(q5p2, {0b00000, 0b00111, 0b11110});
  int lo = 0;
  for (const auto& c : lower_bounds(q5p2)) lo = std::max(lo, c.value);
  std::cout << "    Q5vP2 set (00000,00111,11110) common size " << (v ? v->common.size() : 0) << " lo " << lo << "\n";
  t.expect(v.has_value() && v->common.size() == 2, "Q5vP2 violation");
  t.expect(lo >= 3, "Q5vP2 lo >= 3");
  return t.ok();
}

// ---- 7 -------------------------------------------------------------------------

Matrix definitional_ssp_system(const SymMatrix& a, const Graph& g) {
  const int n = a.size();
  std::map<std::pair<int, int>, int> var;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) var[{i, j}] = static_cast<int>(var.size());
  auto idx = [&](int i, int j) { return var.at({std::min(i, j), std::max(i, j)}); };
  const int vars = static_cast<int>(var.size());
  const Matrix A = a.dense();
  Matrix m = Matrix::Zero(n + g.size() + n * n, vars);
  int row = 0;
  for (int i = 0; i < n; ++i) m(row++, idx(i, i)) = 1;
  for (auto [u, w] : g.edges()) m(row++, idx(u, w)) = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j, ++row)
      for (int k = 0; k < n; ++k) {
        m(row, idx(k, j)) += A(i, k);
        m(row, idx(i, k)) -= A(k, j);
      }
  return m;
}

bool property_suites() {
  Tally t;
  std::mt19937_64 rng(2024);

  int kron_ok = 0;
  std::uniform_real_distribution<double> off(-0.3, 0.3), dg(1.0, 4.0);
  std::bernoulli_distribution sign(0.5);
  auto dominant = [&](int n) {
    SymMatrix a(n);
    for (int i = 0; i < n; ++i) {
      a.set(i, i, (sign(rng) ? 1 : -1) * dg(rng));
      for (int j = i + 1; j < n; ++j) a.set(i, j, off(rng) / n);
    }
    return a;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const SymMatrix a = dominant(2 + trial % 4), b = dominant(2 + trial % 3);
    std::vector<double> prod;
    for (double x : oracle::eigenvalues(a.dense()))
      for (double y : oracle::eigenvalues(b.dense())) prod.push_back(x * y);
    std::sort(prod.begin(), prod.end());
    const auto want = summarize(prod, 1.6e-6);
    const auto got = spectrum_summary(kron(a, b), 1.6e-6);
    bool ok = got.ordered_mult == want.ordered_mult;
    for (std::size_t i = 0; ok && i < got.clusters.size(); ++i)
      ok = std::abs(got.clusters[i].value - want.clusters[i].value) <= 1e-9;
    kron_ok += ok;
  }
  std::printf("    kronecker spectrum law: %d/100\n", kron_ok);
  t.expect(kron_ok == 100, "kronecker law");

  int inter_ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 6;
    const SymMatrix a = oracle::random_symmetric(n, rng);
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    const int m = 1 + static_cast<int>(rng() % (n - 1));
    std::vector<int> del(idx.begin(), idx.begin() + m), keep(idx.begin() + m, idx.end());
    std::sort(del.begin(), del.end());
    std::sort(keep.begin(), keep.end());
    const auto la = oracle::eigenvalues(a.dense());
    const auto lb = oracle::eigenvalues(principal_submatrix(a, keep).dense());
    bool ok = check_interlacing(a, del);
    for (int k = 0; k < n - m; ++k) ok = ok && la[k] <= lb[k] + 1e-10 && lb[k] <= la[k + m] + 1e-10;
    inter_ok += ok;
  }
  std::printf("    interlacing on principal submatrices: %d/100\n", inter_ok);
  t.expect(inter_ok == 100, "interlacing");

  std::vector<std::string> keys;
  for (const auto& m : catalog_data().matrices) keys.push_back(m.key);
  for (int n = 3; n <= 12; ++n) keys.push_back("C_hat_" + std::to_string(n));
  int dual_ok = 0, implication_ok = 0, ssp_count = 0;
  for (const auto& key : keys) {
    const SymMatrix a = catalog_matrix(key);
    const Graph g = support_graph(a);
    const bool ssp = has_ssp(a, g);
    const bool direct = oracle::lu_nullity(definitional_ssp_system(a, g), 1e-9) == 0;
    dual_ok += ssp == direct;
    if (ssp) ++ssp_count;
    implication_ok += !ssp || has_smp(a, g);
  }
  std::printf("    SSP rank test vs definitional null space: %d/%zu agree (%d with SSP)\n", dual_ok, keys.size(), ssp_count);
  std::printf("    SSP implies SMP: %d/%zu\n", implication_ok, keys.size());
  t.expect(dual_ok == static_cast<int>(keys.size()), "SSP dual formulation");
  t.expect(implication_ok == static_cast<int>(keys.size()), "SSP implies SMP");

  double worst = 0;
  std::vector<std::pair<SymMatrix, Graph>> inputs;
  for (int s = 2; s <= 6; ++s) inputs.emplace_back(SymMatrix::adjacency(path_graph(s)), path_graph(s));
  inputs.emplace_back(SymMatrix::adjacency(cycle_graph(6)), cycle_graph(6));
  inputs.emplace_back(flipped_cycle_matrix(8), cycle_graph(8));
  for (const auto& [a, g] : inputs) {
    const int n = a.size();
    const Matrix a2 = a.dense() * a.dense();
    const Matrix mc = c4_cartesian_witness(a, g).matrix.dense();
    worst = std::max(worst, (mc * mc - kron(Matrix::Identity(4, 4), a2 + 2 * Matrix::Identity(n, n))).cwiseAbs().maxCoeff());
    bool zero_diag = true;
    for (int i = 0; i < n; ++i) zero_diag = zero_diag && a(i, i) == 0.0;
    if (zero_diag) {
      const Matrix mt = c4_tensor_witness(a, g).matrix.dense();
      worst = std::max(worst, (mt * mt - kron(Matrix::Identity(4, 4), a2)).cwiseAbs().maxCoeff());
    }
  }
  std::printf("    C4 construction square identities: worst deviation %.1e\n", worst);
  t.expect(worst <= 1e-9, "square identities");
  return t.ok();
}

// ---- 8 -------------------------------------------------------------------------

bool asserted_values() {
  Tally t;
  for (const auto& a : catalog_data().asserted) {
    const auto r = bound(identified_graph(a.key)->graph, catalog_registry());
    std::cout << "    " << a.key << " engine " << interval(r) << ", value " << a.q << " (" << a.reason << ")\n";
    t.expect(r.lo == 2 && r.hi == 3, a.key + " interval [2,3]");
    t.expect(r.lo <= 3 && 3 <= r.hi, a.key + " contains 3");
  }
  t.expect(catalog_data().asserted.size() == 2u, "two asserted values");
  return t.ok();
}

struct Criterion {
  int id;
  const char* name;
  std::function<bool()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "catalog conformance", catalog_conformance},
      {2, "family table at desk scale", family_table},
      {3, "order <= 5 table", small_orders},
      {4, "order 6 table and identified graphs", order_six},
      {5, "augmentation pipeline", augmentation},
      {6, "independent-set obstructions", independent_sets},
      {7, "property suites", property_suites},
      {8, "asserted orthogonality obstructions", asserted_values},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    std::cout << "criterion " << c.id << ": " << c.name << "\n";
    const auto t0 = Clock::now();
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      std::cout << "    error: " << e.what() << "\n";
    }
    std::printf("%s criterion %d: %s (%.1f s)\n", ok ? "PASS" : "FAIL", c.id, c.name, seconds_since(t0));
    std::fflush(stdout);
    failures += !ok;
  }
  return failures == 0 ? 0 : 1;
}
