#include "qmin/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qmin/error.hpp"
#include "qmin/strongprops.hpp"

namespace qmin {

namespace {

ConstructionResult checked(Graph g, SymMatrix m, int claimed, std::string citation) {
  if (!in_pattern(m, g))
    throw Error(ErrorKind::VerificationFailed, citation + ": constructed matrix is not in S(G)");
  ConstructionResult r{std::move(g), std::move(m), claimed, std::move(citation), {}};
  r.summary = spectrum_summary(r.matrix);
  if (r.summary.q > claimed)
    throw Error(ErrorKind::VerificationFailed, r.citation + ": q(M) = " + std::to_string(r.summary.q) +
                                                   " exceeds the claimed " + std::to_string(claimed));
  return r;
}

double spectral_tol(const SpectrumSummary& s, double tol) {
  double rho = 1.0;
  for (double v : s.eigenvalues) rho = std::max(rho, std::abs(v));
  return tol * rho;
}

SymMatrix from_dense_exact(const Matrix& m) { return SymMatrix::from_dense(m, 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff())); }

int distinct_count(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return summarize(values, default_gap(values)).q;
}

std::vector<double> cluster_values(const SpectrumSummary& s) {
  std::vector<double> v;
  for (const auto& c : s.clusters) v.push_back(c.value);
  return v;
}

}  // namespace

SymMatrix flipped_cycle_matrix(int s) {
  if (s < 3) throw Error(ErrorKind::InvalidParams, "flipped cycle needs s >= 3");
  SymMatrix m = SymMatrix::adjacency(cycle_graph(s));
  m.set(0, s - 1, -1.0);
  return m;
}

std::vector<double> flipped_cycle_spectrum(int s) {
  if (s < 3) throw Error(ErrorKind::InvalidParams, "flipped cycle needs s >= 3");
  std::vector<double> v;
  for (int j = 1; j <= s; ++j) v.push_back(2.0 * std::cos(std::numbers::pi * (2 * j - 1) / s));
  std::sort(v.begin(), v.end());
  return v;
}

ConstructionResult flipped_cycle(int s) {
  return checked(cycle_graph(s), flipped_cycle_matrix(s), (s + 1) / 2, "flipped-cycle");
}

bool spectrum_symmetric(const SpectrumSummary& s, double tol) {
  const double t = spectral_tol(s, tol);
  for (const auto& c : s.clusters) {
    bool found = false;
    for (const auto& d : s.clusters)
      if (std::abs(c.value + d.value) <= t) found = true;
    if (!found) return false;
  }
  return true;
}

bool has_zero_eigenvalue(const SpectrumSummary& s, double tol) {
  const double t = spectral_tol(s, tol);
  return std::any_of(s.clusters.begin(), s.clusters.end(), [&](const Cluster& c) { return std::abs(c.value) <= t; });
}

ConstructionResult c4_cartesian_witness(const SymMatrix& a, const Graph& g) {
  if (!in_pattern(a, g)) throw Error(ErrorKind::PatternMismatch, "c4-cartesian: a is not in S(g)");
  const auto s = spectrum_summary(a);
  if (!spectrum_symmetric(s)) throw Error(ErrorKind::SpectrumNotSymmetric, "c4-cartesian: dev(a) != -dev(a)");
  const int t = a.size();
  Matrix d = Matrix::Zero(4, 4);
  d.diagonal() << 1, -1, 1, -1;
  const Matrix m = kron(flipped_cycle_matrix(4).dense(), Matrix::Identity(t, t)) + kron(d, a.dense());
  const int claimed = has_zero_eigenvalue(s) ? s.q + 1 : s.q;
  return checked(product(ProductKind::Cartesian, cycle_graph(4), g), from_dense_exact(m), claimed, "c4-cartesian");
}

ConstructionResult c4_tensor_witness(const SymMatrix& a, const Graph& g) {
  if (!in_pattern(a, g)) throw Error(ErrorKind::PatternMismatch, "c4-tensor: a is not in S(g)");
  for (int i = 0; i < a.size(); ++i)
    if (a(i, i) != 0.0) throw Error(ErrorKind::NonzeroDiagonal, "c4-tensor: a needs a zero diagonal");
  const auto s = spectrum_summary(a);
  if (!spectrum_symmetric(s)) throw Error(ErrorKind::SpectrumNotSymmetric, "c4-tensor: dev(a) != -dev(a)");
  Matrix b(4, 4);
  b << 0, 1, 0, -1, 1, 0, 1, 0, 0, 1, 0, 1, -1, 0, 1, 0;
  const Matrix m = kron(b, a.dense()) / std::sqrt(2.0);
  return checked(product(ProductKind::Tensor, cycle_graph(4), g), from_dense_exact(m), s.q, "c4-tensor");
}

int tensor_path_upper(int s, int t) {
  if (s < 2 || t < 2) throw Error(ErrorKind::InvalidParams, "tensor of paths needs s, t >= 2");
  if (s % 2 == 1 && t % 2 == 0) std::swap(s, t);
  if (s % 2 == 0 && t % 2 == 0) return t * s / 2;
  if (s % 2 == 0) return (t - 1) * s / 2 + 1;
  return (t - 1) * (s - 1) / 2 + 1;
}

ConstructionResult tensor_path_witness(int s, int t) {
  const int claimed = tensor_path_upper(s, t);
  const Graph ps = path_graph(s), pt = path_graph(t);
  return checked(product(ProductKind::Tensor, ps, pt), kron(SymMatrix::adjacency(ps), SymMatrix::adjacency(pt)), claimed,
                 "tensor-of-paths");
}

ConstructionResult strong_product_witness(const SymMatrix& a, const Graph& g, const SymMatrix& b, const Graph& h) {
  if (!in_pattern(a, g) || !in_pattern(b, h)) throw Error(ErrorKind::PatternMismatch, "strong-product: factor outside its pattern");
  for (int i = 0; i < a.size(); ++i)
    if (std::abs(a(i, i)) <= kDefaultPatternTol) throw Error(ErrorKind::ZeroDiagonalEntry, "strong-product: a has a zero diagonal entry");
  for (int i = 0; i < b.size(); ++i)
    if (std::abs(b(i, i)) <= kDefaultPatternTol) throw Error(ErrorKind::ZeroDiagonalEntry, "strong-product: b has a zero diagonal entry");
  std::vector<double> products;
  for (double x : cluster_values(spectrum_summary(a)))
    for (double y : cluster_values(spectrum_summary(b))) products.push_back(x * y);
  return checked(product(ProductKind::Strong, g, h), kron(a, b), distinct_count(products), "strong-product");
}

ConstructionResult strong_p2_witness(const SymMatrix& a, const Graph& g) {
  const auto s = spectrum_summary(a);
  Matrix b(2, 2);
  if (has_zero_eigenvalue(s)) {
    b << 0.5, 0.5, 0.5, 0.5;
  } else if (spectrum_symmetric(s)) {
    const double r = 1.0 / std::sqrt(2.0);
    b << r, r, r, -r;
  } else {
    throw Error(ErrorKind::SpectrumNotSymmetric, "strong-p2: dev(a) needs 0 or symmetry about 0");
  }
  auto r = strong_product_witness(a, g, SymMatrix::from_dense(b), path_graph(2));
  r.citation = "strong-product-p2";
  return checked(std::move(r.graph), std::move(r.matrix), s.q, r.citation);
}

SymMatrix strong_p3_factor() {
  const double c = std::sqrt(3.0 / 5.0);
  Matrix b(3, 3);
  b << -5.0 / 6, -5.0 / 6, 0, -5.0 / 6, 1.0 / 2, 2.0 / 3, 0, 2.0 / 3, 1.0 / 3;
  return SymMatrix::from_dense(c * b);
}

ConstructionResult strong_p3_witness(const SymMatrix& a, const Graph& g) {
  const auto s = spectrum_summary(a);
  if (!spectrum_symmetric(s)) throw Error(ErrorKind::SpectrumNotSymmetric, "strong-p3: dev(a) != -dev(a)");
  auto r = strong_product_witness(a, g, strong_p3_factor(), path_graph(3));
  const int claimed = has_zero_eigenvalue(s) ? s.q : s.q + 1;
  return checked(std::move(r.graph), std::move(r.matrix), claimed, "strong-product-p3");
}

SymMatrix path_with_spectrum(const std::vector<double>& target, bool require_nonzero_diag, std::uint64_t seed, int retries) {
  std::vector<double> lam = target;
  std::sort(lam.begin(), lam.end());
  const int n = static_cast<int>(lam.size());
  if (n == 0) throw Error(ErrorKind::InvalidParams, "empty target spectrum");
  for (int i = 1; i < n; ++i)
    if (!(lam[i] > lam[i - 1])) throw Error(ErrorKind::InvalidParams, "path spectra must be distinct");
  double rho = 1.0;
  for (double v : lam) rho = std::max(rho, std::abs(v));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  for (int attempt = 0; attempt < retries; ++attempt) {
    Vector w(n);
    for (int i = 0; i < n; ++i) w(i) = weight(rng);
    Matrix q = Matrix::Zero(n, n);
    q.col(0) = (w / w.sum()).cwiseSqrt();
    Vector alpha(n), beta = Vector::Zero(std::max(n - 1, 1));
    bool ok = true;
    for (int k = 0; k < n; ++k) {
      Vector z = q.col(k);
      for (int i = 0; i < n; ++i) z(i) *= lam[i];
      alpha(k) = q.col(k).dot(z);
      if (k + 1 == n) break;
      // Full reorthogonalization, twice.
      for (int pass = 0; pass < 2; ++pass)
        for (int j = 0; j <= k; ++j) z -= q.col(j).dot(z) * q.col(j);
      beta(k) = z.norm();
      if (!(beta(k) > 1e-12 * rho)) {
        ok = false;
        break;
      }
      q.col(k + 1) = z / beta(k);
    }
    if (!ok) continue;
    SymMatrix t(n);
    for (int i = 0; i < n; ++i) t.set(i, i, alpha(i));
    for (int i = 0; i + 1 < n; ++i) t.set(i, i + 1, beta(i));
    if (require_nonzero_diag && (alpha.cwiseAbs().minCoeff() <= 1e-6)) continue;
    const auto ev = eigenvalues(t);
    bool match = true;
    for (int i = 0; i < n; ++i)
      if (std::abs(ev[i] - lam[i]) > 1e-8 * rho) match = false;
    if (match) return t;
  }
  throw Error(ErrorKind::RealizationFailed, "path_with_spectrum: retry budget exhausted");
}

ConstructionResult strong_path_witness(int s, int t, std::uint64_t seed) {
  if (s < 2 || t < 2) throw Error(ErrorKind::InvalidParams, "strong product of paths needs s, t >= 2");
  auto powers = [](int k, bool signed_pairs) {
    std::vector<double> v;
    if (signed_pairs) {
      for (int i = 0; i < k / 2; ++i) {
        v.push_back(std::ldexp(1.0, i));
        v.push_back(-std::ldexp(1.0, i));
      }
    } else {
      for (int i = 0; i < k; ++i) v.push_back(std::ldexp(1.0, i));
    }
    std::sort(v.begin(), v.end());
    return v;
  };
  const bool both_even = s % 2 == 0 && t % 2 == 0;
  const SymMatrix a = path_with_spectrum(powers(s, both_even), true, seed);
  const SymMatrix b = path_with_spectrum(powers(t, both_even), true, seed + 1);
  auto r = strong_product_witness(a, path_graph(s), b, path_graph(t));
  return checked(std::move(r.graph), std::move(r.matrix), both_even ? s + t - 2 : s + t - 1, "strong-product-of-paths");
}

ConstructionResult cartesian_sum_witness(const SymMatrix& a, const Graph& g, const SymMatrix& b, const Graph& h) {
  if (!in_pattern(a, g) || !in_pattern(b, h)) throw Error(ErrorKind::PatternMismatch, "cartesian-sum: factor outside its pattern");
  auto consecutive = [](const SpectrumSummary& s) {
    const double tol = spectral_tol(s, 1e-7);
    for (int j = 0; j < s.q; ++j)
      if (std::abs(s.clusters[j].value - (j + 1)) > tol) return false;
    return true;
  };
  const auto sa = spectrum_summary(a), sb = spectrum_summary(b);
  if (!consecutive(sa) || !consecutive(sb))
    throw Error(ErrorKind::SpectrumNotConsecutive, "cartesian-sum: spectra must be {1, ..., q}");
  const int na = a.size(), nb = b.size();
  const Matrix m = kron(a.dense(), Matrix::Identity(nb, nb)) + kron(Matrix::Identity(na, na), b.dense());
  return checked(product(ProductKind::Cartesian, g, h), from_dense_exact(m), sa.q + sb.q - 1, "cartesian-sum");
}

ConstructionResult clique_path_matrix(const std::vector<int>& sizes) {
  if (sizes.size() < 2 || std::any_of(sizes.begin(), sizes.end(), [](int s) { return s < 2; }))
    throw Error(ErrorKind::InvalidSizes, "clique-path needs s >= 2 cliques of order >= 2");
  const Graph g = make_family(Family::CliquePath, sizes);
  SymMatrix m(g.order());
  int start = 0;
  for (int s : sizes) {
    for (int i = start; i < start + s; ++i)
      for (int j = i; j < start + s; ++j) m.set(i, j, m(i, j) + 1.0);
    start += s - 1;
  }
  return checked(g, m, static_cast<int>(sizes.size()) + 1, "clique-path");
}

ConstructionResult clique_star_matrix(const std::vector<int>& sizes) {
  if (sizes.size() < 2 || std::any_of(sizes.begin(), sizes.end(), [](int s) { return s < 2; }))
    throw Error(ErrorKind::InvalidSizes, "clique-star needs s >= 2 cliques of order >= 2");
  const Graph g = make_family(Family::CliqueStar, sizes);
  const int center = g.order() - 1;
  SymMatrix m(g.order());
  int start = 0;
  for (int s : sizes) {
    const int l = s - 1;
    std::vector<int> members;
    for (int i = start; i < start + l; ++i) members.push_back(i);
    members.push_back(center);
    for (std::size_t x = 0; x < members.size(); ++x)
      for (std::size_t y = x; y < members.size(); ++y)
        m.set(members[x], members[y], m(members[x], members[y]) + 1.0 / l);
    start += l;
  }
  return checked(g, m, 3, "clique-star");
}

ConstructionResult kn_minus_e_witness(int n, const SearchBudget& budget) {
  if (n < 4) throw Error(ErrorKind::InvalidParams, "K_n - e witness needs n >= 4");
  const Graph g = make_family(Family::CompleteMinusEdge, {n});
  if (n % 2 == 0) {
    RealizationTask task;
    task.graph = g;
    task.multiplicities = {n / 2, n / 2};
    task.require_ssp = true;
    task.seed = budget.seed;
    task.starts = budget.starts;
    task.iterations = budget.iterations;
    task.threads = budget.threads;
    const auto res = realize(task);
    if (!res.success) throw Error(ErrorKind::RealizationFailed, "K_n - e search: " + res.message);
    return checked(g, *res.matrix, 2, "complete-minus-edge");
  }
  const auto base = kn_minus_e_witness(n - 1, budget);
  const auto aug = add_universal_vertex_witness(base.matrix, base.graph, 0, budget);
  if (!aug) throw Error(ErrorKind::RealizationFailed, "K_n - e universal-vertex augmentation was inconclusive");
  if (!(aug->graph == g)) throw Error(ErrorKind::VerificationFailed, "augmented graph is not K_n - e");
  return checked(g, aug->matrix, 2, "complete-minus-edge");
}

ConstructionResult complete_witness(int n) {
  const Graph g = complete_graph(n);
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, 1.0);
  return checked(g, m, n == 1 ? 1 : 2, "all-ones");
}

ConstructionResult complete_bipartite_witness(int m, int n) {
  if (m < 1 || n < 1) throw Error(ErrorKind::InvalidParams, "complete bipartite needs m, n >= 1");
  const int small = std::min(m, n), big = std::max(m, n);
  // Householder reflection I - 2vv^T/|v|^2 with v_i = sqrt(i+2): orthogonal, no zero entry.
  Vector v(big);
  for (int i = 0; i < big; ++i) v(i) = std::sqrt(i + 2.0);
  const Matrix h = Matrix::Identity(big, big) - 2.0 * v * v.transpose() / v.squaredNorm();
  const Matrix b = h.topRows(small);
  Matrix full = Matrix::Zero(m + n, m + n);
  if (m <= n) {
    full.topRightCorner(m, n) = b;
    full.bottomLeftCorner(n, m) = b.transpose();
  } else {
    full.topRightCorner(m, n) = b.transpose();
    full.bottomLeftCorner(n, m) = b;
  }
  return checked(complete_bipartite_graph(m, n), from_dense_exact(full), m == n ? 2 : 3, "orthonormal-rows-bipartite");
}

ConstructionResult hypercube_witness(int d, const SearchBudget& budget) {
  const Graph g = make_family(Family::Hypercube, {d});
  if (d == 1) return checked(g, SymMatrix::adjacency(g), 2, "hypercube");
  if (d > 3) throw Error(ErrorKind::TooLarge, "hypercube witness search limited to d <= 3");
  RealizationTask task;
  task.graph = g;
  task.multiplicities = {g.order() / 2, g.order() / 2};
  task.seed = budget.seed;
  task.starts = budget.starts;
  task.iterations = budget.iterations;
  task.threads = budget.threads;
  const auto res = realize(task);
  if (!res.success) throw Error(ErrorKind::RealizationFailed, "hypercube search: " + res.message);
  return checked(g, *res.matrix, 2, "hypercube");
}

}  // namespace qmin
