#include "qmin/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qmin/error.hpp"

namespace qmin {

SymMatrix::SymMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0) {
  if (n < 0) throw Error(ErrorKind::InvalidParams, "negative dimension");
}

std::size_t SymMatrix::index(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw Error(ErrorKind::DimensionMismatch, "matrix index out of range");
  if (i > j) std::swap(i, j);
  // Row-major packed upper triangle.
  return static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i - 1) / 2 + (j - i);
}

SymMatrix SymMatrix::from_dense(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  const int n = static_cast<int>(m.rows());
  SymMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > tol) throw Error(ErrorKind::InvalidParams, "matrix is not symmetric");
      out.set(i, j, m(i, j));
    }
  return out;
}

SymMatrix SymMatrix::identity(int n) {
  SymMatrix out(n);
  for (int i = 0; i < n; ++i) out.set(i, i, 1.0);
  return out;
}

SymMatrix SymMatrix::adjacency(const Graph& g) {
  SymMatrix out(g.order());
  for (auto [u, v] : g.edges()) out.set(u, v, 1.0);
  return out;
}

Matrix SymMatrix::dense() const {
  Matrix m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) m(i, j) = m(j, i) = (*this)(i, j);
  return m;
}

double SymMatrix::max_abs() const {
  double best = 0.0;
  for (double x : data_) best = std::max(best, std::abs(x));
  return best;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "sum of different sizes");
  SymMatrix out(a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = i; j < a.size(); ++j) out.set(i, j, a(i, j) + b(i, j));
  return out;
}

SymMatrix operator*(double s, const SymMatrix& a) {
  SymMatrix out(a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = i; j < a.size(); ++j) out.set(i, j, s * a(i, j));
  return out;
}

// ---- eigensolver ---------------------------------------------------------------

EigenSystem eigensystem(const SymMatrix& sym, int max_sweeps) {
  const int n = sym.size();
  Matrix a = sym.dense();
  Matrix v = Matrix::Identity(n, n);
  const double eps = std::numeric_limits<double>::epsilon();
  const double norm = std::max(a.norm(), std::numeric_limits<double>::min());
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= eps * norm) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        if (std::abs(apq) < 0.01 * eps * std::min(std::abs(a(p, p)), std::abs(a(q, q))) && sweep > 3) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  if (sweep == max_sweeps) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) > 1e-12 * norm)
      throw Error(ErrorKind::ConvergenceFailure, "Jacobi did not converge after " + std::to_string(sweep) + " sweeps");
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });
  EigenSystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  out.sweeps = sweep;
  return out;
}

std::vector<double> eigenvalues(const SymMatrix& a) {
  const auto es = eigensystem(a);
  return std::vector<double>(es.values.data(), es.values.data() + es.values.size());
}

// ---- clustering ------------------------------------------------------------------

double default_gap(const std::vector<double>& sorted) {
  double rho = 0.0;
  for (double x : sorted) rho = std::max(rho, std::abs(x));
  return kDefaultGapRel * std::max(1.0, rho);
}

SpectrumSummary summarize(const std::vector<double>& sorted, double gap) {
  if (!(gap > 0)) throw Error(ErrorKind::InvalidParams, "clustering gap must be positive");
  SpectrumSummary s;
  s.eigenvalues = sorted;
  s.tolerance_used = gap;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i + 1;
    double sum = sorted[i];
    while (j < sorted.size() && sorted[j] - sorted[j - 1] <= gap) sum += sorted[j++];
    const int mult = static_cast<int>(j - i);
    s.clusters.push_back({sum / mult, mult});
    s.ordered_mult.push_back(mult);
    i = j;
  }
  s.q = static_cast<int>(s.clusters.size());
  return s;
}

SpectrumSummary spectrum_summary(const SymMatrix& a, std::optional<double> gap) {
  const auto ev = eigenvalues(a);
  return summarize(ev, gap.value_or(default_gap(ev)));
}

// ---- patterns ------------------------------------------------------------------

bool in_pattern(const SymMatrix& a, const Graph& g, double tol) {
  if (a.size() != g.order()) throw Error(ErrorKind::DimensionMismatch, "matrix and graph orders differ");
  for (int i = 0; i < a.size(); ++i)
    for (int j = i + 1; j < a.size(); ++j) {
      const bool nz = std::abs(a(i, j)) > tol;
      if (nz != g.has_edge(i, j)) return false;
    }
  return true;
}

Graph support_graph(const SymMatrix& a, double tol) {
  Graph g(a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = i + 1; j < a.size(); ++j)
      if (std::abs(a(i, j)) > tol) g.add_edge(i, j);
  return g;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

SymMatrix kron(const SymMatrix& a, const SymMatrix& b) { return SymMatrix::from_dense(kron(a.dense(), b.dense())); }

// ---- singular values -------------------------------------------------------------

std::vector<double> singular_values(const Matrix& m) {
  Matrix u = m.rows() >= m.cols() ? m : Matrix(m.transpose());
  const Eigen::Index k = u.cols();
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = i + 1; j < k; ++j) {
        const double alpha = u.col(i).squaredNorm();
        const double beta = u.col(j).squaredNorm();
        const double gamma = u.col(i).dot(u.col(j));
        if (gamma == 0.0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const Vector ui = u.col(i);
        u.col(i) = c * ui - s * u.col(j);
        u.col(j) = s * ui + c * u.col(j);
      }
    if (!rotated) break;
  }
  std::vector<double> sv(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) sv[static_cast<std::size_t>(i)] = u.col(i).norm();
  std::sort(sv.rbegin(), sv.rend());
  return sv;
}

RankReport rank_report(const Matrix& m, double tol) {
  RankReport r;
  if (m.size() == 0) return r;
  const auto sv = singular_values(m);
  r.sigma_max = sv.empty() ? 0.0 : sv.front();
  r.threshold = tol * std::max(1.0, r.sigma_max);
  for (double s : sv) {
    if (s > r.threshold) {
      ++r.rank;
      r.smallest_retained = s;
    } else {
      r.largest_discarded = std::max(r.largest_discarded, s);
    }
  }
  return r;
}

int rank_tol(const Matrix& m, double tol) { return rank_report(m, tol).rank; }

SymMatrix principal_submatrix(const SymMatrix& a, const std::vector<int>& keep) {
  SymMatrix out(static_cast<int>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = i; j < keep.size(); ++j) out.set(static_cast<int>(i), static_cast<int>(j), a(keep[i], keep[j]));
  return out;
}

bool check_interlacing(const SymMatrix& a, const std::vector<int>& deleted, double tol) {
  const int n = a.size();
  std::vector<char> drop(n, 0);
  for (int d : deleted) {
    if (d < 0 || d >= n) throw Error(ErrorKind::DimensionMismatch, "deleted index out of range");
    drop[d] = 1;
  }
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (!drop[i]) keep.push_back(i);
  const int m = n - static_cast<int>(keep.size());
  const auto la = eigenvalues(a);
  const auto lb = eigenvalues(principal_submatrix(a, keep));
  double rho = 1.0;
  for (double x : la) rho = std::max(rho, std::abs(x));
  const double t = tol * rho;
  for (std::size_t k = 0; k < lb.size(); ++k)
    if (lb[k] < la[k] - t || lb[k] > la[k + m] + t) return false;
  return true;
}

bool is_orthogonal_witness(const SymMatrix& a, const Graph& g, double tol) {
  if (!in_pattern(a, g)) return false;
  const Matrix d = a.dense();
  const Matrix r = d * d - Matrix::Identity(a.size(), a.size());
  if (r.cwiseAbs().maxCoeff() > tol) return false;
  const auto ev = eigenvalues(a);
  const bool neg = std::any_of(ev.begin(), ev.end(), [](double x) { return x < 0; });
  const bool pos = std::any_of(ev.begin(), ev.end(), [](double x) { return x > 0; });
  return neg && pos;
}

}  // namespace qmin
