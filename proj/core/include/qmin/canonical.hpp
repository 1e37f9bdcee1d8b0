#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmin/graph.hpp"

namespace qmin {

/// Isomorphism-invariant key. Up to 7 vertices: the minimum upper-triangle
/// adjacency bitstring over all permutations. Larger graphs: colour refinement
/// with individualization, minimum certificate over all leaves.
struct CanonicalForm {
  int n = 0;
  std::string bits;  // '0'/'1', row-major upper triangle in canonical order
  std::vector<int> order;  // canonical position -> original vertex

  std::string key() const { return std::to_string(n) + ":" + bits; }
  bool operator==(const CanonicalForm& o) const { return n == o.n && bits == o.bits; }
  bool operator<(const CanonicalForm& o) const { return n != o.n ? n < o.n : bits < o.bits; }
};

CanonicalForm canonical_form(const Graph& g, std::uint64_t leaf_budget = 5'000'000);
std::string canonical_key(const Graph& g);
bool is_isomorphic(const Graph& g, const Graph& h);
/// Graph rebuilt in canonical vertex order.
Graph canonical_graph(const Graph& g);

/// All connected graphs on n <= 7 vertices up to isomorphism, sorted by canonical form.
std::vector<Graph> enumerate_connected(int n);

}  // namespace qmin
