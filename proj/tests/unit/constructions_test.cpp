#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "qmin/canonical.hpp"
#include "qmin/constructions.hpp"
#include "qmin/strongprops.hpp"
#include "qmin/error.hpp"

using namespace qmin;

namespace {

int distinct(std::vector<double> v, double tol = 1e-7) {
  std::sort(v.begin(), v.end());
  int q = v.empty() ? 0 : 1;
  for (std::size_t i = 1; i < v.size(); ++i) q += v[i] - v[i - 1] > tol;
  return q;
}

int q_of(const SymMatrix& m) { return distinct(oracle::eigenvalues(m.dense())); }

SymMatrix path_witness(int n) { return SymMatrix::adjacency(path_graph(n)); }

double square_block_error(const ConstructionResult& r, const SymMatrix& a, double shift) {
  const int t = a.size();
  const Matrix m = r.matrix.dense();
  const Matrix a2 = a.dense() * a.dense() + shift * Matrix::Identity(t, t);
  return (m * m - kron(Matrix::Identity(4, 4), a2)).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("constructions") {
  TEST_CASE("flipped cycles") {
    const auto c4 = flipped_cycle(4);
    CHECK(c4.summary.ordered_mult == std::vector<int>{2, 2});
    CHECK(std::abs(c4.summary.clusters[0].value + std::sqrt(2.0)) <= 1e-12);
    const auto c5 = flipped_cycle(5);
    CHECK(c5.summary.ordered_mult == std::vector<int>{1, 2, 2});
    CHECK(std::abs(c5.summary.clusters[0].value + 2) <= 1e-12);
    for (int s = 3; s <= 20; ++s) {
      const auto formula = flipped_cycle_spectrum(s);
      const auto ref = oracle::eigenvalues(flipped_cycle_matrix(s).dense());
      for (int j = 0; j < s; ++j) CHECK(std::abs(formula[j] - ref[j]) <= 1e-10);
      CHECK(flipped_cycle(s).summary.q == (s + 1) / 2);
    }
  }

  TEST_CASE("C4 cartesian construction") {
    const auto p4 = c4_cartesian_witness(path_witness(4), path_graph(4));
    CHECK(p4.graph == product(ProductKind::Cartesian, cycle_graph(4), path_graph(4)));
    CHECK(q_of(p4.matrix) <= 4);
    CHECK(square_block_error(p4, path_witness(4), 2) <= 1e-9);

    const auto c8 = c4_cartesian_witness(flipped_cycle_matrix(8), cycle_graph(8));
    CHECK(q_of(c8.matrix) <= 4);
    CHECK(square_block_error(c8, flipped_cycle_matrix(8), 2) <= 1e-9);

    const auto p3 = c4_cartesian_witness(path_witness(3), path_graph(3));
    CHECK(p3.claimed_q_upper == 4);
    CHECK(q_of(p3.matrix) == 4);

    // spectrum of the flipped 5-cycle is not symmetric about 0
    CHECK_THROWS_AS(c4_cartesian_witness(flipped_cycle_matrix(5), cycle_graph(5)), Error);
  }

  TEST_CASE("C4 tensor construction") {
    for (int s = 2; s <= 6; ++s) {
      const auto r = c4_tensor_witness(path_witness(s), path_graph(s));
      CHECK(r.graph == product(ProductKind::Tensor, cycle_graph(4), path_graph(s)));
      CHECK(q_of(r.matrix) <= s);
      CHECK(square_block_error(r, path_witness(s), 0) <= 1e-9);
    }
    // spectrum of M lies in {+-|lambda|}
    CHECK(q_of(c4_tensor_witness(SymMatrix::adjacency(cycle_graph(4)), cycle_graph(4)).matrix) <= 3);
    CHECK(q_of(c4_tensor_witness(SymMatrix::adjacency(cycle_graph(6)), cycle_graph(6)).matrix) <= 4);

    SymMatrix d = path_witness(3);
    d.set(0, 0, 1.0);
    CHECK_THROWS_AS(c4_tensor_witness(d, path_graph(3)), Error);
  }

  TEST_CASE("tensor product of paths") {
    CHECK(q_of(tensor_path_witness(4, 4).matrix) <= 8);
    CHECK(q_of(tensor_path_witness(4, 3).matrix) <= 5);
    CHECK(q_of(tensor_path_witness(3, 3).matrix) <= 3);
    CHECK(tensor_path_upper(4, 4) == 8);
    CHECK(tensor_path_upper(4, 3) == 5);
    CHECK(tensor_path_upper(3, 4) == 5);
    CHECK(tensor_path_upper(3, 3) == 3);
  }

  TEST_CASE("strong products") {
    // symmetric spectrum, no zero: the (1/sqrt2)[[1,1],[1,-1]] factor keeps dev(a)
    const SymMatrix a = path_with_spectrum({-2, -1, 1, 2}, true, 3);
    const auto r2 = strong_p2_witness(a, path_graph(4));
    CHECK(r2.graph == product(ProductKind::Strong, path_graph(4), path_graph(2)));
    CHECK(q_of(r2.matrix) == 4);

    // zero in the spectrum: (1/2)J_2 keeps dev(a) as well
    const SymMatrix z = path_with_spectrum({-1, 0, 1}, true, 5);
    CHECK(q_of(strong_p2_witness(z, path_graph(3)).matrix) == 3);

    const SymMatrix b = strong_p3_factor();
    const auto eb = oracle::eigenvalues(b.dense());
    CHECK(std::abs(eb[0] + 1) <= 1e-12);
    CHECK(std::abs(eb[1]) <= 1e-12);
    CHECK(std::abs(eb[2] - 1) <= 1e-12);
    CHECK(in_pattern(b, path_graph(3)));
    const auto p3p3 = strong_p3_witness(b, path_graph(3));
    CHECK(p3p3.graph == product(ProductKind::Strong, path_graph(3), path_graph(3)));
    CHECK(q_of(p3p3.matrix) == 3);

    CHECK_THROWS_AS(strong_product_witness(path_witness(3), path_graph(3), b, path_graph(3)), Error);
  }

  TEST_CASE("strong product of paths") {
    for (int s = 2; s <= 5; ++s)
      for (int t = 2; t <= 5; ++t) {
        const auto r = strong_path_witness(s, t);
        const int want = (s % 2 == 0 && t % 2 == 0) ? s + t - 2 : s + t - 1;
        CHECK(q_of(r.matrix) <= want);
      }
  }

  TEST_CASE("paths with a prescribed spectrum") {
    const SymMatrix a = path_with_spectrum({1, 2, 4}, false);
    CHECK(in_pattern(a, path_graph(3)));
    const auto ev = oracle::eigenvalues(a.dense());
    CHECK(std::abs(ev[0] - 1) <= 1e-8);
    CHECK(std::abs(ev[1] - 2) <= 1e-8);
    CHECK(std::abs(ev[2] - 4) <= 1e-8);
    for (int i = 0; i + 1 < 3; ++i) CHECK(a(i, i + 1) > 0);

    const SymMatrix p = path_with_spectrum({1, 2, 4, 8}, true, 2);
    const SymMatrix q = path_with_spectrum({1, 2, 4, 8}, true, 9);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(p(i, i)) > 1e-6);
    const auto k = oracle::eigenvalues(kron(p, q).dense());
    CHECK(distinct(k) == 7);
    for (double x : k) CHECK(std::abs(std::log2(x) - std::round(std::log2(x))) <= 1e-8);

    const SymMatrix s = path_with_spectrum({-2, -1, 1, 2}, true, 4);
    CHECK(distinct(oracle::eigenvalues(kron(s, s).dense())) == 6);

    CHECK_THROWS_AS(path_with_spectrum({1, 1, 2}, false), Error);
  }

  TEST_CASE("cartesian sums") {
    const SymMatrix a = path_with_spectrum({1, 2, 3}, false);
    const SymMatrix b = path_with_spectrum({1, 2}, false);
    const auto r = cartesian_sum_witness(a, path_graph(3), b, path_graph(2));
    CHECK(q_of(r.matrix) <= 4);
    const auto bb = cartesian_sum_witness(b, path_graph(2), b, path_graph(2));
    CHECK(q_of(bb.matrix) == 3);
    CHECK_THROWS_AS(cartesian_sum_witness(path_witness(3), path_graph(3), b, path_graph(2)), Error);
  }

  TEST_CASE("clique paths") {
    const auto r33 = clique_path_matrix({3, 3});
    CHECK(rank_tol(r33.matrix.dense()) == 2);
    CHECK(q_of(r33.matrix) <= 3);

    const auto r222 = clique_path_matrix({2, 2, 2});
    CHECK(is_isomorphic(r222.graph, path_graph(4)));
    CHECK(rank_tol(r222.matrix.dense()) == 3);
    CHECK(q_of(r222.matrix) <= 4);

    const auto r343 = clique_path_matrix({3, 4, 3});
    CHECK(rank_tol(r343.matrix.dense()) == 3);
    CHECK(oracle::svd_rank(r343.matrix.dense()) == 3);
    CHECK(q_of(r343.matrix) == 4);

    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> sizes(2 + trial % 3);
      for (int& s : sizes) s = 2 + static_cast<int>(rng() % 3);
      CHECK(rank_tol(clique_path_matrix(sizes).matrix.dense()) == static_cast<int>(sizes.size()));
    }
    CHECK_THROWS_AS(clique_path_matrix({3}), Error);
    CHECK_THROWS_AS(clique_path_matrix({3, 1}), Error);
  }

  TEST_CASE("clique stars") {
    const auto star = clique_star_matrix({2, 2, 2, 2, 2});
    CHECK(q_of(star.matrix) == 3);

    const auto r = clique_star_matrix({3, 3, 4});
    CHECK(r.graph.order() == 8);
    const auto ev = oracle::eigenvalues(r.matrix.dense());
    CHECK(std::count_if(ev.begin(), ev.end(), [](double x) { return std::abs(x) < 1e-9; }) == 5);
    CHECK(std::count_if(ev.begin(), ev.end(), [](double x) { return std::abs(x - 1) < 1e-9; }) >= 2);
    CHECK(q_of(r.matrix) == 3);
    // deleting the centre interlaces, consistent with mult(1) >= s - 1
    CHECK(check_interlacing(r.matrix, {7}));

    CHECK(q_of(clique_star_matrix({2, 2}).matrix) == 3);
  }

  TEST_CASE("complete and complete bipartite witnesses") {
    for (int n = 2; n <= 8; ++n) CHECK(q_of(complete_witness(n).matrix) == 2);
    for (int m = 1; m <= 5; ++m)
      for (int n = m; n <= 5; ++n) {
        const auto r = complete_bipartite_witness(m, n);
        CHECK(in_pattern(r.matrix, complete_bipartite_graph(m, n)));
        CHECK(q_of(r.matrix) == (m == n ? 2 : 3));
      }
  }

  TEST_CASE("K_n minus an edge") {
    SearchBudget budget;
    budget.seed = 1;
    for (int n : {4, 6, 7}) {
      const auto r = kn_minus_e_witness(n, budget);
      CHECK(r.summary.q == 2);
      CHECK(r.summary.ordered_mult == std::vector<int>{(n + 1) / 2, n / 2});
      CHECK(has_ssp(r.matrix, r.graph));
    }
  }
}
