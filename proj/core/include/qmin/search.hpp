#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmin/graph.hpp"
#include "qmin/spectra.hpp"

namespace qmin {

/// What to look for: an ordered multiplicity list, optionally with the exact distinct values.
struct RealizationTask {
  Graph graph;
  std::vector<int> multiplicities;
  std::optional<std::vector<double>> values;  // ascending, one per multiplicity
  bool require_ssp = false;
  std::uint64_t seed = 1;
  int starts = 200;
  int iterations = 500;
  int threads = 0;  // 0: hardware concurrency
  /// Optional starting matrix; each start adds noise of this size to it.
  std::optional<SymMatrix> initial;
  double initial_noise = 0.05;
  /// Entries of `initial` redrawn per start as random sign times 0.3*U(0.5,1.5)*scale.
  std::vector<Edge> resample_edges;
  double resample_scale = 1.0;
};

/// Builds a task from a sorted spectrum with repeats.
RealizationTask task_for_spectrum(const Graph& g, const std::vector<double>& sorted_spectrum, double gap = 1e-9);

struct RealizationResult {
  bool success = false;
  std::optional<SymMatrix> matrix;
  SpectrumSummary summary;
  int start = -1;                // index of the successful start
  std::uint64_t start_seed = 0;  // per-start seed derived from the task seed
  int attempts = 0;
  double best_residual = 0.0;    // smallest final residual over all starts
  std::string message;
};

/// Levenberg-Marquardt on the diagonal and edge entries, multi-start. A success is
/// re-verified (pattern, multiplicity list and values within 1e-7, SSP if required);
/// a failure is inconclusive.
RealizationResult realize(const RealizationTask& task);

/// Per-start seed, independent of thread count.
std::uint64_t derive_seed(std::uint64_t seed, int start);

struct SearchBudget {
  std::uint64_t seed = 1;
  int starts = 200;
  int iterations = 500;
  int threads = 0;
};

struct AugmentResult {
  SymMatrix matrix;
  Graph graph;
  SpectrumSummary summary;
};

/// Adds a vertex adjacent to `alpha` and searches for an SSP matrix whose chosen cluster
/// gained one unit of multiplicity, other eigenvalues unchanged. Only the support condition
/// is required of a; SSP is checked on the result. Throws hypothesis-not-satisfied if the
/// support condition fails.
std::optional<AugmentResult> augment(const SymMatrix& a, const Graph& g, int cluster, const std::vector<int>& alpha,
                                     const SearchBudget& budget = {});

/// Adds a vertex adjacent to every vertex. Throws degree-condition-violated if some vertex
/// has fewer than two neighbours and hypothesis-not-satisfied if a lacks SSP.
std::optional<AugmentResult> add_universal_vertex_witness(const SymMatrix& a, const Graph& g, int cluster,
                                                          const SearchBudget& budget = {});

}  // namespace qmin
