#pragma once

#include <string>

#include "qmin/graph.hpp"
#include "qmin/spectra.hpp"

namespace qmin {

/// Columns indexed by pairs i<j, rows by non-edges of g:
/// column (i,j) is the non-edge part of a*K_ij - K_ij*a, K_ij = E_ij - E_ji.
Matrix ssp_matrix(const SymMatrix& a, const Graph& g);

struct PropertyReport {
  bool holds = false;
  int unknowns = 0;  // p = number of non-edges
  RankReport rank;
};

/// Rank test: SSP iff ssp_matrix has rank p. Throws pattern-mismatch if a is not in S(g).
PropertyReport ssp_report(const SymMatrix& a, const Graph& g, double rank_tol = kDefaultRankTol,
                          double pattern_tol = kDefaultPatternTol);
bool has_ssp(const SymMatrix& a, const Graph& g, double rank_tol = kDefaultRankTol);

/// Commutator system only: upper-triangle entries of aX - Xa for X supported on non-edges.
/// Its null space is the set of X that witness failure of SSP.
Matrix commutator_system(const SymMatrix& a, const Graph& g);

/// Commutator rows plus tr(a^i X) = 0 for i = 0..n-1; (C(n,2)+n) x p.
/// Powers are taken of a shifted and scaled copy of a with spectrum in [-1,1], so every
/// trace row has entries of size at most 2; this does not change the solution set.
Matrix smp_system(const SymMatrix& a, const Graph& g);
PropertyReport smp_report(const SymMatrix& a, const Graph& g, double rank_tol = kDefaultRankTol,
                          double pattern_tol = kDefaultPatternTol);
bool has_smp(const SymMatrix& a, const Graph& g, double rank_tol = kDefaultRankTol);

/// Orthonormal basis of the eigenspace of the cluster with index `cluster` (ascending order).
Matrix cluster_basis(const SymMatrix& a, int cluster, std::optional<double> gap = std::nullopt);

/// Support condition for adding a vertex adjacent to `alpha`: no eigenvector for the
/// chosen cluster meets alpha in fewer than two coordinates. Needs |alpha| = k+1.
bool augmentation_hypothesis(const SymMatrix& a, const Graph& g, int cluster, const std::vector<int>& alpha,
                             double rank_tol = kDefaultRankTol);

struct WitnessFlags {
  bool pattern = false;
  bool ssp = false;
  bool smp = false;
  bool orthogonal = false;
};

struct WitnessRecord {
  std::string id;
  Graph graph;
  SymMatrix matrix;
  SpectrumSummary summary;
  WitnessFlags verified;
  int rank = 0;
  std::string source;
};

/// Verifies the claimed flags on the exact matrix and fills every flag it can afford
/// (SSP/SMP are always computed up to `auto_limit` vertices, otherwise only when claimed).
/// Throws verification-failed when a claim does not hold.
WitnessRecord make_witness(std::string id, const Graph& g, const SymMatrix& a, WitnessFlags claimed,
                           std::string source, int auto_limit = 12);

}  // namespace qmin
