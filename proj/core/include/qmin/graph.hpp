#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qmin {

/// Undirected edge, stored with first < second. Vertices are 0-based in the API.
using Edge = std::pair<int, int>;

/// Simple undirected graph on vertices 0..n-1 with a dense adjacency matrix.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, const std::vector<Edge>& edges);

  int order() const noexcept { return n_; }
  int size() const noexcept { return m_; }

  bool has_edge(int u, int v) const;
  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  int degree(int v) const;
  std::vector<int> neighbors(int v) const;
  /// Sorted edge list, each edge with first < second.
  std::vector<Edge> edges() const;
  /// Edges of the complement graph.
  std::vector<Edge> non_edges() const;

  bool operator==(const Graph& other) const;

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  int m_ = 0;
  std::vector<std::uint8_t> adj_;
};

enum class Family {
  Path,
  Cycle,
  Complete,
  CompleteBipartite,
  Empty,
  GeneralizedStar,
  GeneralizedBull,
  Hypercube,
  CliquePath,
  CliqueStar,
  CompleteMinusEdge,
  Wheel,
  PathCyclePath,
};

std::optional<Family> family_from_name(std::string_view name);
std::string_view family_name(Family family);

/// Builds a named family member.
///   path [n], cycle [n], complete [n], complete-bipartite [m,n], empty [n],
///   gstar [a,b] or [a,b,1]  (path on a+b+1 vertices, leaf on vertex a+1),
///   gbull [a,b]  (path on a+b+3 vertices plus edge {a+1,a+3}),
///   hypercube [d], cliquepath [n1..ns], cliquestar [n1..ns],
///   kminuse [n], wheel [n] (hub last), pcp [k] (P_{k+1} + C4 + P_{k+1} glued at opposite cycle vertices).
Graph make_family(Family family, const std::vector<int>& params);

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph complete_bipartite_graph(int m, int n);
Graph empty_graph(int n);

enum class ProductKind { Cartesian, Tensor, Strong };

/// Vertex (u, u') of the product gets index u*|V(h)| + u', the Kronecker layout.
Graph product(ProductKind kind, const Graph& g, const Graph& h);
/// Vertices of g keep their indices, vertices of h are shifted by |V(g)|.
Graph join(const Graph& g, const Graph& h);
Graph disjoint_union(const Graph& g, const Graph& h);
Graph complement(const Graph& g);
/// Subgraph induced on `vertices`, relabelled in the order given.
Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices);
/// Adds vertex n adjacent exactly to `alpha`.
Graph add_vertex(const Graph& g, const std::vector<int>& alpha);

enum class OpKind { DeleteVertex, DeleteEdge, ContractEdge, SubdivideEdge, VertexSum, Join, Product };

struct GraphOp {
  OpKind kind = OpKind::DeleteVertex;
  int vertex = -1;              // DeleteVertex; VertexSum: summing vertex in the base graph
  Edge edge{-1, -1};            // DeleteEdge, ContractEdge, SubdivideEdge
  std::optional<Graph> other;   // VertexSum, Join, Product
  int other_vertex = -1;        // VertexSum: summing vertex in `other`
  ProductKind product = ProductKind::Cartesian;
};

/// Deletion keeps the relative order of the remaining vertices. Contraction of uv
/// (u < v) merges v into u. Subdivision appends the new vertex last. A vertex sum
/// appends the non-summing vertices of `other` in order.
Graph apply_op(const Graph& g, const GraphOp& op);

struct GraphOpLog {
  Graph base;
  GraphOp op;
  Graph result;
  bool recompute_matches() const { return apply_op(base, op) == result; }
};

GraphOpLog log_op(const Graph& g, const GraphOp& op);

// ---- predicates -------------------------------------------------------------

bool is_connected(const Graph& g);
std::vector<std::vector<int>> components(const Graph& g);
/// BFS distances from `source`; -1 for unreachable.
std::vector<int> distances_from(const Graph& g, int source);

struct UniquePathWitness {
  int value = 1;  // dist + 1
  int u = -1;
  int v = -1;
  std::vector<int> path;
};

/// Largest dist(u,v)+1 over pairs joined by exactly one shortest path.
UniquePathWitness unique_shortest_path_witness(const Graph& g);
int unique_shortest_path_bound(const Graph& g);

struct ZeroForcingResult {
  int size = 0;
  std::vector<int> set;
};

bool is_zero_forcing_set(const Graph& g, const std::vector<int>& set);
/// Exhaustive search in increasing size; throws too-large above 32 vertices or
/// when the subset budget is exhausted.
ZeroForcingResult zero_forcing(const Graph& g, std::uint64_t subset_budget = 200'000'000);
int zero_forcing_number(const Graph& g);

/// Subset DP; throws too-large above 16 vertices.
bool has_hamilton_cycle(const Graph& g);

struct IndependentSetViolation {
  std::vector<int> set;
  std::vector<int> common;  // union of pairwise common neighbourhoods
};

/// Checks one candidate set; empty if it is not independent or not violating. A violation:
/// the union U of pairwise common neighbourhoods has 0 < |U| < |S| and every vertex of S
/// has a neighbour in U.
std::optional<IndependentSetViolation> check_independent_set(const Graph& g, const std::vector<int>& candidate);
/// Searches independent sets of size 2..max_size for a violation.
std::optional<IndependentSetViolation> independent_set_violation(const Graph& g, int max_size,
                                                                 std::uint64_t budget = 5'000'000);

/// Bijection pi with pi(E(h)) inside E(g); h vertex i maps to g vertex pi[i].
std::optional<std::vector<int>> is_spanning_subgraph_of(const Graph& h, const Graph& g);

enum class NearPathKind { Path, PathPlusIsolated, GeneralizedStar, GeneralizedBull };

struct NearPathClass {
  NearPathKind kind;
  int a = 0;  // arm parameters for star/bull
  int b = 0;
};

std::optional<NearPathClass> near_path_class(const Graph& g);
std::string_view near_path_name(NearPathKind kind);

}  // namespace qmin
