#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "qmin/graph.hpp"

namespace qmin {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kDefaultGapRel = 1e-7;
inline constexpr double kDefaultPatternTol = 1e-9;
inline constexpr double kDefaultRankTol = 1e-9;

/// Real symmetric matrix stored once per unordered pair (packed upper triangle).
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n);

  /// Accepts a dense matrix whose asymmetry is at most `tol`; the upper triangle is kept.
  static SymMatrix from_dense(const Matrix& m, double tol = 0.0);
  static SymMatrix identity(int n);
  static SymMatrix adjacency(const Graph& g);

  int size() const noexcept { return n_; }
  double operator()(int i, int j) const { return data_[index(i, j)]; }
  void set(int i, int j, double value) { data_[index(i, j)] = value; }

  Matrix dense() const;
  double max_abs() const;
  double trace() const;
  bool operator==(const SymMatrix& o) const { return n_ == o.n_ && data_ == o.data_; }

 private:
  std::size_t index(int i, int j) const;

  int n_ = 0;
  std::vector<double> data_;
};

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
SymMatrix operator*(double s, const SymMatrix& a);

struct EigenSystem {
  Vector values;   // ascending
  Matrix vectors;  // orthonormal columns
  int sweeps = 0;
};

/// Cyclic Jacobi rotations; throws convergence-failure after the sweep limit.
EigenSystem eigensystem(const SymMatrix& a, int max_sweeps = 100);
std::vector<double> eigenvalues(const SymMatrix& a);

struct Cluster {
  double value = 0.0;
  int multiplicity = 0;
};

struct SpectrumSummary {
  std::vector<double> eigenvalues;
  std::vector<Cluster> clusters;
  std::vector<int> ordered_mult;
  int q = 0;
  double tolerance_used = 0.0;
};

/// 1e-7 * max(1, spectral radius).
double default_gap(const std::vector<double>& sorted_eigenvalues);
/// Greedy left-to-right clustering; a new cluster starts when a step exceeds `gap`.
SpectrumSummary summarize(const std::vector<double>& sorted_eigenvalues, double gap);
SpectrumSummary spectrum_summary(const SymMatrix& a, std::optional<double> gap = std::nullopt);

bool in_pattern(const SymMatrix& a, const Graph& g, double tol = kDefaultPatternTol);
/// Graph on the off-diagonal entries exceeding `tol`.
Graph support_graph(const SymMatrix& a, double tol = kDefaultPatternTol);

Matrix kron(const Matrix& a, const Matrix& b);
SymMatrix kron(const SymMatrix& a, const SymMatrix& b);

/// One-sided Jacobi (Hestenes) singular values, descending.
std::vector<double> singular_values(const Matrix& m);

struct RankReport {
  int rank = 0;
  double sigma_max = 0.0;
  double smallest_retained = 0.0;  // 0 if nothing retained
  double largest_discarded = 0.0;  // 0 if nothing discarded
  double threshold = 0.0;
};

/// Singular values above tol * max(1, sigma_max) count towards the rank.
RankReport rank_report(const Matrix& m, double tol = kDefaultRankTol);
int rank_tol(const Matrix& m, double tol = kDefaultRankTol);

SymMatrix principal_submatrix(const SymMatrix& a, const std::vector<int>& keep);
/// Eigenvalues of a with the rows/columns in `deleted` removed interlace those of a.
bool check_interlacing(const SymMatrix& a, const std::vector<int>& deleted, double tol = 1e-8);

/// In pattern, A*A = I within tol, and both +1 and -1 occur as eigenvalues.
bool is_orthogonal_witness(const SymMatrix& a, const Graph& g, double tol = 1e-8);

}  // namespace qmin
