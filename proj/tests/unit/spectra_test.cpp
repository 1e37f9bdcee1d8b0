#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qmin/catalog.hpp"
#include "qmin/constructions.hpp"
#include "qmin/error.hpp"
#include "qmin/spectra.hpp"

using namespace qmin;

namespace {

SymMatrix diag(std::initializer_list<double> d) {
  SymMatrix a(static_cast<int>(d.size()));
  int i = 0;
  for (double x : d) a.set(i, i, x), ++i;
  return a;
}

void check_near(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= tol);
}

}  // namespace

TEST_SUITE("spectra") {
  TEST_CASE("eigensystem examples") {
    check_near(eigenvalues(diag({3, 1, 2})), {1, 2, 3}, 1e-14);
    check_near(eigenvalues(SymMatrix::adjacency(path_graph(2))), {-1, 1}, 1e-14);
    check_near(eigenvalues(catalog_matrix("M_96")), {-1, -1, 0, 0, 2, 2}, 1e-8);
  }

  TEST_CASE("eigensystem matches Eigen and reconstructs") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 1 + trial % 8;
      const SymMatrix a = oracle::random_symmetric(n, rng, 2.0);
      const EigenSystem es = eigensystem(a);
      const auto ref = oracle::eigenvalues(a.dense());
      for (int i = 0; i < n; ++i) CHECK(std::abs(es.values(i) - ref[i]) <= 1e-10);
      const Matrix rec = es.vectors * es.values.asDiagonal() * es.vectors.transpose();
      CHECK((rec - a.dense()).cwiseAbs().maxCoeff() <= 1e-8);
      CHECK((es.vectors.transpose() * es.vectors - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }

  TEST_CASE("summarize") {
    const auto s = summarize({1.0, 1.0 + 1e-12, 5.0}, 1e-8);
    CHECK(s.q == 2);
    CHECK(s.ordered_mult == std::vector<int>{2, 1});

    const auto c5 = spectrum_summary(catalog_matrix("C_hat_5"));
    CHECK(c5.ordered_mult == std::vector<int>{1, 2, 2});

    const auto m115 = spectrum_summary(catalog_matrix("M_115"));
    CHECK(m115.ordered_mult == std::vector<int>{2, 2, 2});
    CHECK(std::abs(m115.clusters[0].value - (-1 - 2 * std::sqrt(3.0))) <= 1e-8);
    CHECK(std::abs(m115.clusters[2].value - (-1 + 2 * std::sqrt(3.0))) <= 1e-8);

    CHECK(default_gap({-0.5, 0.5}) == doctest::Approx(1e-7));
    CHECK(default_gap({-10, 3}) == doctest::Approx(1e-6));
  }

  TEST_CASE("refining the gap never merges clusters") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> ev;
      for (int i = 0; i < 10; ++i) {
        const double x = U(rng);
        ev.push_back(x);
        if (i % 3 == 0) ev.push_back(x + 1e-9);
      }
      std::sort(ev.begin(), ev.end());
      for (double g : {1e-1, 1e-3, 1e-6}) {
        const auto coarse = summarize(ev, g);
        const auto fine = summarize(ev, g / 10);
        CHECK(fine.q >= coarse.q);
        for (std::size_t i = 1; i < fine.clusters.size(); ++i)
          CHECK(fine.clusters[i].value - fine.clusters[i - 1].value > g / 10);
      }
    }
  }

  TEST_CASE("pattern membership") {
    CHECK(in_pattern(SymMatrix::adjacency(cycle_graph(4)), cycle_graph(4)));
    CHECK_FALSE(in_pattern(SymMatrix::identity(2), path_graph(2)));
    const SymMatrix m174 = catalog_matrix("M_174");
    CHECK(in_pattern(m174, support_graph(m174)));
    CHECK(support_graph(m174).order() == 6);
    CHECK_THROWS_AS(in_pattern(SymMatrix::identity(3), path_graph(2)), Error);
  }

  TEST_CASE("kronecker product") {
    const SymMatrix a = SymMatrix::adjacency(cycle_graph(3));
    const SymMatrix k = kron(SymMatrix::identity(2), a);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(k(i, j) == a(i, j));
        CHECK(k(i + 3, j + 3) == a(i, j));
        CHECK(k(i, j + 3) == 0.0);
      }
    check_near(eigenvalues(kron(diag({1, 2}), diag({3, 5}))), {3, 5, 6, 10}, 1e-12);

    for (int s = 2; s <= 4; ++s)
      for (int t = 2; t <= 4; ++t) {
        const SymMatrix m = kron(SymMatrix::adjacency(path_graph(s)), SymMatrix::adjacency(path_graph(t)));
        CHECK(in_pattern(m, product(ProductKind::Tensor, path_graph(s), path_graph(t))));
      }
  }

  TEST_CASE("rank with tolerance") {
    CHECK(rank_tol(Matrix::Zero(4, 4)) == 0);
    CHECK(rank_tol(Matrix::Ones(4, 4)) == 1);
    CHECK(rank_tol(Matrix::Identity(5, 3)) == 3);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> N;
    for (int trial = 0; trial < 40; ++trial) {
      const int r = 1 + trial % 4, rows = 6, cols = 5 + trial % 3;
      Matrix u(rows, r), v(r, cols);
      for (auto* m : {&u, &v})
        for (int i = 0; i < m->size(); ++i) m->data()[i] = N(rng);
      const Matrix m = u * v;
      CHECK(rank_tol(m) == r);
      CHECK(rank_tol(m) == oracle::svd_rank(m));
      const auto sv = singular_values(m);
      Eigen::JacobiSVD<Matrix> ref(m);
      for (int i = 0; i < r; ++i) CHECK(std::abs(sv[i] - ref.singularValues()(i)) <= 1e-9 * sv[0]);
    }
    const auto rep = rank_report(Matrix::Identity(3, 3));
    CHECK(rep.rank == 3);
    CHECK(rep.largest_discarded == 0.0);
  }

  TEST_CASE("interlacing") {
    std::mt19937_64 rng(13);
    CHECK(check_interlacing(oracle::random_symmetric(6, rng), {}));
    for (int trial = 0; trial < 20; ++trial) CHECK(check_interlacing(oracle::random_symmetric(6, rng), {static_cast<int>(rng() % 6)}));
    for (int trial = 0; trial < 20; ++trial) CHECK(check_interlacing(oracle::random_symmetric(7, rng), {0, 3, 5}));
  }

  TEST_CASE("orthogonal witnesses") {
    for (const char* key : {"M_154", "M_168", "M_174", "M_181", "M_186"}) {
      const SymMatrix m = catalog_matrix(key);
      CAPTURE(key);
      CHECK(is_orthogonal_witness(m, support_graph(m)));
      const Matrix d = m.dense();
      CHECK((d * d - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-8);
    }
    CHECK_FALSE(is_orthogonal_witness(SymMatrix::identity(2), path_graph(2)));
  }

  TEST_CASE("flipped cycle spectrum formula") {
    for (int s = 3; s <= 20; ++s) {
      std::vector<double> want;
      for (int j = 1; j <= s; ++j) want.push_back(2 * std::cos(std::numbers::pi * (2 * j - 1) / s));
      std::sort(want.begin(), want.end());
      check_near(eigenvalues(flipped_cycle_matrix(s)), want, 1e-10);
    }
  }
}
