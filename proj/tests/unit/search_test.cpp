#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qmin/canonical.hpp"
#include "qmin/catalog.hpp"
#include "qmin/constructions.hpp"
#include "qmin/error.hpp"
#include "qmin/graph_io.hpp"
#include "qmin/search.hpp"

using namespace qmin;

namespace {

SearchBudget small_budget(std::uint64_t seed = 1) {
  SearchBudget b;
  b.seed = seed;
  b.starts = 64;
  b.iterations = 400;
  return b;
}

void check_multiplicities(const SymMatrix& m, const std::vector<int>& want) {
  const auto ev = oracle::eigenvalues(m.dense());
  std::vector<int> got;
  for (std::size_t i = 0; i < ev.size();) {
    std::size_t j = i;
    while (j + 1 < ev.size() && ev[j + 1] - ev[j] <= 1e-6) ++j;
    got.push_back(static_cast<int>(j - i + 1));
    i = j + 1;
  }
  CHECK(got == want);
}

}  // namespace

TEST_SUITE("search") {
  TEST_CASE("free-spectrum multiplicity target on C_5") {
    RealizationTask task;
    task.graph = cycle_graph(5);
    task.multiplicities = {2, 2, 1};
    const auto res = realize(task);
    REQUIRE(res.success);
    CHECK(in_pattern(*res.matrix, task.graph));
    check_multiplicities(*res.matrix, {2, 2, 1});
  }

  TEST_CASE("exact spectrum target on C_5") {
    const auto task = task_for_spectrum(cycle_graph(5), {1, 1, 2, 2, 3});
    CHECK(task.multiplicities == std::vector<int>{2, 2, 1});
    const auto res = realize(task);
    REQUIRE(res.success);
    const auto ev = oracle::eigenvalues(res.matrix->dense());
    const double want[] = {1, 1, 2, 2, 3};
    for (int i = 0; i < 5; ++i) CHECK(std::abs(ev[i] - want[i]) <= 1e-7);
  }

  TEST_CASE("K_6 minus an edge with two eigenvalues and SSP") {
    RealizationTask task;
    task.graph = make_family(Family::CompleteMinusEdge, {6});
    task.multiplicities = {3, 3};
    task.require_ssp = true;
    const auto res = realize(task);
    REQUIRE(res.success);
    CHECK(has_ssp(*res.matrix, task.graph));
  }

  TEST_CASE("paths cannot carry a repeated eigenvalue") {
    RealizationTask task = task_for_spectrum(path_graph(3), {0, 0, 1});
    task.starts = 16;
    const auto res = realize(task);
    CHECK_FALSE(res.success);
    CHECK_FALSE(res.matrix.has_value());
  }

  TEST_CASE("malformed tasks are rejected") {
    RealizationTask task;
    task.graph = cycle_graph(4);
    task.multiplicities = {2, 1};
    CHECK_THROWS_AS(realize(task), Error);
    task.multiplicities = {2, 2};
    task.values = std::vector<double>{1.0};
    CHECK_THROWS_AS(realize(task), Error);
  }

  TEST_CASE("distinct spectra are realizable on every connected graph of order 5") {
    std::uint64_t seed = 3;
    for (const auto& g : enumerate_connected(5)) {
      RealizationTask task;
      task.graph = g;
      task.multiplicities = {1, 1, 1, 1, 1};
      task.values = std::vector<double>{-2, -1, 0, 1, 2};
      task.seed = seed++;
      task.starts = 32;
      const auto res = realize(task);
      CHECK_MESSAGE(res.success, describe(g));
    }
  }

  TEST_CASE("determinism for a fixed seed, independent of thread count") {
    RealizationTask task;
    task.graph = cycle_graph(6);
    task.multiplicities = {2, 2, 2};
    task.seed = 42;
    task.starts = 16;
    task.threads = 1;
    const auto a = realize(task);
    task.threads = 4;
    const auto b = realize(task);
    REQUIRE(a.success);
    REQUIRE(b.success);
    CHECK(a.start == b.start);
    CHECK(*a.matrix == *b.matrix);
    CHECK(derive_seed(42, 3) == derive_seed(42, 3));
    CHECK(derive_seed(42, 3) != derive_seed(42, 4));
  }

  TEST_CASE("augmentation") {
    const SymMatrix banner = catalog_matrix("M_banner");
    const Graph g = support_graph(banner);
    const auto res = augment(banner, g, 1, {1, 2}, small_budget());
    REQUIRE(res.has_value());
    CHECK(res->graph == add_vertex(g, {1, 2}));
    CHECK(res->summary.ordered_mult == std::vector<int>{2, 2, 2});
    CHECK(has_ssp(res->matrix, res->graph));
    CHECK(cluster_preservation_error(banner, res->matrix, 1) <= 1e-6);

    CHECK_THROWS_AS(augment(banner, g, 1, {0, 3}, small_budget()), Error);
    CHECK_THROWS_AS(augment(banner, g, 1, {0, 1, 2}, small_budget()), Error);
  }

  TEST_CASE("universal vertex") {
    const auto k5 = kn_minus_e_witness(5, small_budget());
    CHECK(k5.summary.ordered_mult == std::vector<int>{3, 2});
    const auto k6 = add_universal_vertex_witness(k5.matrix, k5.graph, 1, small_budget());
    REQUIRE(k6.has_value());
    CHECK(is_isomorphic(k6->graph, make_family(Family::CompleteMinusEdge, {6})));
    CHECK(k6->summary.ordered_mult == std::vector<int>{3, 3});

    const auto k7 = add_universal_vertex_witness(k6->matrix, k6->graph, 0, small_budget());
    REQUIRE(k7.has_value());
    CHECK(k7->summary.ordered_mult == std::vector<int>{4, 3});

    try {
      add_universal_vertex_witness(path_with_spectrum({1, 2, 3}, false), path_graph(3), 0, small_budget());
      FAIL("expected degree-condition-violated");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegreeConditionViolated);
    }
  }
}
