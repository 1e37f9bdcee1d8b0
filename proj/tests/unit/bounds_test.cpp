#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qmin/bounds.hpp"
#include "qmin/canonical.hpp"
#include "qmin/catalog.hpp"
#include "qmin/constructions.hpp"
#include "qmin/error.hpp"
#include "qmin/graph_io.hpp"

using namespace qmin;

namespace {

bool has_contribution(const std::vector<Contribution>& cs, int value, std::string_view citation) {
  return std::any_of(cs.begin(), cs.end(), [&](const Contribution& c) { return c.value == value && c.citation == citation; });
}

const Graph& identified(const std::string& key) {
  static std::map<std::string, Graph> cache;
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, identified_graph(key).value().graph).first;
  return it->second;
}

// q for graphs the engine determines
int q_value(const Graph& g, const Registry& reg) {
  const auto r = bound(g, reg);
  CHECK_MESSAGE(r.determined, describe(g));
  return r.lo;
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("lower bound examples") {
    CHECK(has_contribution(lower_bounds(path_graph(6)), 6, "path"));
    const auto c8 = lower_bounds(cycle_graph(8));
    CHECK(has_contribution(c8, 4, "zero-forcing-nullity"));
    const auto g179 = lower_bounds(identified("G179"));
    CHECK(has_contribution(g179, 3, "independent-set-common-neighbours"));
    CHECK(check_independent_set(identified("G179"), {2, 3, 4}).has_value());
    CHECK_THROWS_AS(lower_bounds(disjoint_union(path_graph(2), path_graph(2))), Error);
  }

  TEST_CASE("upper bound examples") {
    const Registry empty;
    const Graph p4p2 = product(ProductKind::Cartesian, path_graph(4), path_graph(2));
    CHECK(has_contribution(upper_bounds(p4p2, empty), 4, "hamilton-cycle"));

    for (int s = 2; s <= 7; ++s) {
      const Graph fan = join(path_graph(s), Graph(1));
      CHECK(has_contribution(upper_bounds(fan, empty), (s + 2) / 2, "hamilton-cycle"));
      Registry reg;
      const SymMatrix a = SymMatrix::adjacency(fan);
      register_witness(reg, "fan", fan, a, {.pattern = true}, "test");
      CHECK(has_contribution(upper_bounds(fan, reg), oracle::svd_rank(a.dense()) + 1, "min-rank-witness"));
    }

    CHECK(has_contribution(upper_bounds(join(path_graph(5), path_graph(5)), empty), 2, "join-equal-order"));
    CHECK(has_contribution(upper_bounds(join(path_graph(5), path_graph(3)), empty), 4, "join-order-difference"));
  }

  TEST_CASE("aggregated reports") {
    const Registry& reg = catalog_registry();
    const auto c6 = bound(cycle_graph(6), reg);
    CHECK(c6.lo == 3);
    CHECK(c6.hi == 3);
    CHECK(c6.determined);

    Registry ks = reg;
    const auto star = clique_star_matrix({3, 3, 4});
    register_witness(ks, "KS(3,3,4)", star.graph, star.matrix, {.pattern = true}, "clique-star");
    const auto r = bound(star.graph, ks);
    CHECK(r.lo == 3);
    CHECK(r.hi == 3);

    for (const char* key : {"G187", "G189"}) {
      const auto w = bound(identified(key), reg);
      CHECK(w.lo == 2);
      CHECK(w.hi == 3);
    }
  }

  TEST_CASE("intervals are consistent on every small connected graph") {
    const Registry& reg = catalog_registry();
    for (int n = 1; n <= 6; ++n)
      for (const auto& g : enumerate_connected(n)) {
        const auto r = bound(g, reg);
        CHECK(1 <= r.lo);
        CHECK(r.lo <= r.hi);
        CHECK(r.hi <= n);
        CHECK((r.lo == 1) == (n == 1));
      }
  }

  TEST_CASE("registering a witness never raises hi or moves lo") {
    std::mt19937_64 rng(21);
    Registry reg;
    for (int trial = 0; trial < 30; ++trial) {
      const Graph g = oracle::random_graph(5 + trial % 2, 0.5, rng);
      if (!is_connected(g)) continue;
      const auto before = bound(g, reg);
      Registry more = reg;
      register_witness(more, "random-" + std::to_string(trial), g, oracle::random_in_pattern(g, rng), {.pattern = true},
                       "test");
      const auto after = bound(g, more);
      CHECK(after.hi <= before.hi);
      CHECK(after.lo == before.lo);
      reg = more;
    }
  }

  TEST_CASE("table consistency") {
    const Registry& reg = catalog_registry();
    CHECK(table_consistency(2, {{2, 1}}, reg).feasible);
    const auto t4 = table_consistency(4, {{2, 3}, {3, 2}, {4, 1}}, reg);
    CHECK(t4.graphs == 6);
    CHECK(t4.feasible);
    // every graph has a value, and determined graphs take their own value
    for (std::size_t i = 0; i < t4.reports.size(); ++i) {
      CHECK(t4.assignment[i] >= t4.reports[i].lo);
      CHECK(t4.assignment[i] <= t4.reports[i].hi);
    }
    CHECK_FALSE(table_consistency(4, {{2, 4}, {3, 1}, {4, 1}}, reg).feasible);
    CHECK_THROWS_AS(table_consistency(4, {{2, 3}}, reg), Error);

    std::map<int, int> six;
    for (const auto& e : catalog_data().table4) ++six[e.q];
    const auto t6 = table_consistency(6, six, reg);
    CHECK(t6.graphs == 112);
    CHECK(t6.feasible);
  }

  TEST_CASE("hopcroft-karp") {
    CHECK(hopcroft_karp({{0, 1}, {0}}, 2) == std::vector<int>{1, 0});
    const auto partial = hopcroft_karp({{0}, {0}}, 1);
    CHECK(std::count(partial.begin(), partial.end(), -1) == 1);
  }

  TEST_CASE("join splits") {
    CHECK(join_splits(path_graph(4)).empty());
    // complement components {0,2},{1},{3},{4}; {0,2} alone is disconnected
    const auto splits = join_splits(join(path_graph(3), path_graph(2)));
    CHECK(splits.size() == 6);
    CHECK(std::count(splits.begin(), splits.end(), std::pair{std::vector<int>{0, 1, 2}, std::vector<int>{3, 4}}) == 1);
    for (const auto& [x, y] : join_splits(complete_graph(4))) {
      for (int u : x)
        for (int v : y) CHECK(complete_graph(4).has_edge(u, v));
    }
  }

  TEST_CASE("effects of graph operations") {
    const Registry& reg = catalog_registry();
    auto q = [&](const Graph& g) { return q_value(g, reg); };
    auto determined = [&](const Graph& g) { return bound(g, reg).determined; };

    // join lowers: P_n v P_n
    for (int n = 3; n <= 4; ++n) {
      const Graph j = join(path_graph(n), path_graph(n));
      CHECK(determined(j));
      CHECK(q(j) < q(path_graph(n)));
    }
    // join maintains: P_2 v P_2 = K_4
    CHECK(q(join(path_graph(2), path_graph(2))) == 2);

    // cartesian product maintains: P_s box P_2
    for (int s = 2; s <= 4; ++s) CHECK(q(product(ProductKind::Cartesian, path_graph(s), path_graph(2))) == s);

    // tensor raises: K_3 x P_2 = C_6
    const Graph k3p2 = product(ProductKind::Tensor, complete_graph(3), path_graph(2));
    CHECK(is_isomorphic(k3p2, cycle_graph(6)));
    CHECK(q(k3p2) == 3);

    // vertex sum raises on KP(3,3); maintains on KS(3,3,3)
    CHECK(q(make_family(Family::CliquePath, {3, 3})) == 3);
    Registry ks = reg;
    const auto star = clique_star_matrix({3, 3, 3});
    register_witness(ks, "KS(3,3,3)", star.graph, star.matrix, {.pattern = true}, "clique-star");
    CHECK(bound(star.graph, ks).lo == 3);
    CHECK(bound(star.graph, ks).hi == 3);

    // deletions: the midpoint of P_5 lowers, a vertex of K_5 maintains, a vertex of C_6 raises
    GraphOp del{OpKind::DeleteVertex};
    del.vertex = 2;
    CHECK(q(apply_op(path_graph(5), del)) < q(path_graph(5)));
    CHECK(q(apply_op(complete_graph(5), del)) == q(complete_graph(5)));
    CHECK(q(apply_op(cycle_graph(6), del)) > q(cycle_graph(6)));

    GraphOp dele{OpKind::DeleteEdge};
    dele.edge = {2, 3};
    CHECK(q(apply_op(path_graph(6), dele)) < q(path_graph(6)));
    CHECK(q(apply_op(cycle_graph(6), dele)) > q(cycle_graph(6)));

    // the path-cycle-path graph S_{k,k}: removing z raises q to 2k+3
    const int k = 1;
    const Graph pcp = make_family(Family::PathCyclePath, {k});
    const auto rp = bound(pcp, reg);
    CHECK(rp.lo <= k + 2);
    CHECK(k + 2 <= rp.hi);
    GraphOp z{OpKind::DeleteVertex};
    z.vertex = k + 3;
    CHECK(q(apply_op(pcp, z)) == 2 * k + 3);

    // contracting xz gives the generalized bull GB(k,k), q = 2k+2
    GraphOp con{OpKind::ContractEdge};
    con.edge = {k, k + 3};
    const Graph bull = apply_op(pcp, con);
    CHECK(is_isomorphic(bull, make_family(Family::GeneralizedBull, {k, k})));
    CHECK(q(bull) == 2 * k + 2);

    // subdividing an edge of C_5 maintains q
    GraphOp sub{OpKind::SubdivideEdge};
    sub.edge = {0, 1};
    CHECK(q(apply_op(cycle_graph(5), sub)) == q(cycle_graph(5)));
  }
}
