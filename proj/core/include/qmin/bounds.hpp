#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmin/graph.hpp"
#include "qmin/registry.hpp"

namespace qmin {

enum class Direction { Lower, Upper };

struct Contribution {
  int value = 0;
  Direction direction = Direction::Lower;
  std::string citation;
  std::string detail;
  std::string witness_id;  // empty unless a registered witness supplied the bound
};

struct BoundOptions {
  int independent_set_max = 0;  // 0: up to n
  std::uint64_t independent_set_budget = 1'000'000;
  std::uint64_t zero_forcing_budget = 50'000'000;
  int lift_limit = 10;
  int hamilton_limit = 16;
};

struct BoundReport {
  Graph graph;
  int lo = 1;
  int hi = 1;
  bool determined = false;
  std::vector<Contribution> contributions;
  std::vector<std::string> witnesses;
  std::vector<std::string> notes;  // rules that were skipped, e.g. for size
};

/// All applicable lower bounds for a connected graph. Throws disconnected-graph.
std::vector<Contribution> lower_bounds(const Graph& g, const BoundOptions& opts = {});
/// All applicable upper bounds for a connected graph.
std::vector<Contribution> upper_bounds(const Graph& g, const Registry& registry, const BoundOptions& opts = {});

/// Interval [lo, hi] with provenance. A disconnected graph takes the maximum over its
/// components, plus any witness registered for the whole graph. Throws infeasible-report
/// if lo > hi.
BoundReport bound(const Graph& g, const Registry& registry, const BoundOptions& opts = {});

/// Splits of V into two sides with every cross pair an edge and both sides connected.
std::vector<std::pair<std::vector<int>, std::vector<int>>> join_splits(const Graph& g);

struct TableVerdict {
  int order = 0;
  int graphs = 0;
  int matched = 0;
  int determined = 0;
  bool feasible = false;
  std::vector<BoundReport> reports;
  std::vector<int> assignment;  // value matched to each report, -1 if unmatched
};

/// Perfect-matching check between the connected graphs of order n and a value multiset.
/// Throws count-mismatch if the multiset total differs from the number of graphs.
TableVerdict table_consistency(int n, const std::map<int, int>& multiset, const Registry& registry,
                               const BoundOptions& opts = {});

/// Maximum bipartite matching (Hopcroft-Karp); adj[u] lists right vertices of left vertex u.
/// Returns the right partner of each left vertex, -1 when unmatched.
std::vector<int> hopcroft_karp(const std::vector<std::vector<int>>& adj, int right_count);

std::string_view direction_name(Direction d);

}  // namespace qmin
