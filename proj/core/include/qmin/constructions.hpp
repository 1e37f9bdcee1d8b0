#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmin/graph.hpp"
#include "qmin/search.hpp"
#include "qmin/spectra.hpp"

namespace qmin {

/// A witness matrix together with the bound it certifies. Every constructor re-checks
/// in_pattern and q(matrix) <= claimed_q_upper before returning.
struct ConstructionResult {
  Graph graph;
  SymMatrix matrix;
  int claimed_q_upper = 0;
  std::string citation;
  SpectrumSummary summary;
};

/// Cycle adjacency with the (1,s) pair negated.
SymMatrix flipped_cycle_matrix(int s);
/// Closed-form eigenvalues 2cos(pi(2j-1)/s), j = 1..s, ascending.
std::vector<double> flipped_cycle_spectrum(int s);
ConstructionResult flipped_cycle(int s);

/// True when the distinct eigenvalues are symmetric about zero (within tol * max(1, rho)).
bool spectrum_symmetric(const SpectrumSummary& s, double tol = 1e-7);
bool has_zero_eigenvalue(const SpectrumSummary& s, double tol = 1e-7);

/// M = C^_4 (x) I + D (x) a, D = diag(1,-1,1,-1), in S(C4 box g).
ConstructionResult c4_cartesian_witness(const SymMatrix& a, const Graph& g);
/// M = (1/sqrt2) B (x) a with B the signed 4-cycle, in S(C4 x g).
ConstructionResult c4_tensor_witness(const SymMatrix& a, const Graph& g);
/// Kronecker product of two path adjacency matrices, in S(P_s x P_t).
ConstructionResult tensor_path_witness(int s, int t);
/// Case formula for the tensor product of paths.
int tensor_path_upper(int s, int t);

/// kron(a, b) in S(g strong h); every diagonal entry of a and b must be nonzero.
ConstructionResult strong_product_witness(const SymMatrix& a, const Graph& g, const SymMatrix& b, const Graph& h);
/// g strong P_2 with B = (1/sqrt2)[[1,1],[1,-1]] or (1/2)J_2, chosen from dev(a).
ConstructionResult strong_p2_witness(const SymMatrix& a, const Graph& g);
/// g strong P_3 with a fixed 3x3 matrix of spectrum {-1,0,1}.
SymMatrix strong_p3_factor();
ConstructionResult strong_p3_witness(const SymMatrix& a, const Graph& g);
/// P_s strong P_t from path matrices with spectra 1,2,4,... (or +-1,+-2,... when both even).
ConstructionResult strong_path_witness(int s, int t, std::uint64_t seed = 1);

/// Tridiagonal matrix with positive off-diagonal and the given distinct spectrum
/// (Lanczos on diag(target) from a random positive weight vector).
SymMatrix path_with_spectrum(const std::vector<double>& target, bool require_nonzero_diag, std::uint64_t seed = 1,
                             int retries = 200);

/// a (x) I + I (x) b in S(g box h); needs dev(a) = {1..q(a)} and dev(b) = {1..q(b)}.
ConstructionResult cartesian_sum_witness(const SymMatrix& a, const Graph& g, const SymMatrix& b, const Graph& h);

/// Sum of the all-ones blocks of the cliques; rank s.
ConstructionResult clique_path_matrix(const std::vector<int>& sizes);
/// Sum over cliques of (1/l_i) u_i u_i^T, u_i the clique indicator (center last).
ConstructionResult clique_star_matrix(const std::vector<int>& sizes);

/// SSP witness with multiplicities (ceil(n/2), floor(n/2)); even n by search, odd n by
/// adding a universal vertex to the even case. Throws realization-failed.
ConstructionResult kn_minus_e_witness(int n, const SearchBudget& budget = {});

/// J_n (q = 2 for n >= 2).
ConstructionResult complete_witness(int n);
/// [[0,B],[B^T,0]] with B having orthonormal rows and no zero entry.
ConstructionResult complete_bipartite_witness(int m, int n);
/// Hypercube witness with two eigenvalues: P_2 and C^_4 directly, d = 3 by search.
ConstructionResult hypercube_witness(int d, const SearchBudget& budget = {});

}  // namespace qmin
