#include "qmin/graph.hpp"

#include <algorithm>
#include <array>

#include "qmin/error.hpp"

namespace qmin {

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {
  if (n < 0) throw Error(ErrorKind::InvalidParams, "negative vertex count");
}

Graph::Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw Error(ErrorKind::MissingElement, "vertex " + std::to_string(v) + " out of range");
}

bool Graph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  return adj_[static_cast<std::size_t>(u) * n_ + v] != 0;
}

void Graph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw Error(ErrorKind::InvalidParams, "self-loop at " + std::to_string(u));
  auto& a = adj_[static_cast<std::size_t>(u) * n_ + v];
  if (a) return;
  a = 1;
  adj_[static_cast<std::size_t>(v) * n_ + u] = 1;
  ++m_;
}

void Graph::remove_edge(int u, int v) {
  if (!has_edge(u, v)) throw Error(ErrorKind::MissingElement, "edge not present");
  adj_[static_cast<std::size_t>(u) * n_ + v] = 0;
  adj_[static_cast<std::size_t>(v) * n_ + u] = 0;
  --m_;
}

int Graph::degree(int v) const {
  check_vertex(v);
  int d = 0;
  for (int w = 0; w < n_; ++w) d += adj_[static_cast<std::size_t>(v) * n_ + w];
  return d;
}

std::vector<int> Graph::neighbors(int v) const {
  check_vertex(v);
  std::vector<int> out;
  for (int w = 0; w < n_; ++w)
    if (adj_[static_cast<std::size_t>(v) * n_ + w]) out.push_back(w);
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (adj_[static_cast<std::size_t>(u) * n_ + v]) out.emplace_back(u, v);
  return out;
}

std::vector<Edge> Graph::non_edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (!adj_[static_cast<std::size_t>(u) * n_ + v]) out.emplace_back(u, v);
  return out;
}

bool Graph::operator==(const Graph& other) const { return n_ == other.n_ && adj_ == other.adj_; }

// ---- families ---------------------------------------------------------------

namespace {

struct FamilyName {
  Family family;
  std::string_view name;
};

constexpr std::array<FamilyName, 13> kFamilyNames{{
    {Family::Path, "path"},
    {Family::Cycle, "cycle"},
    {Family::Complete, "complete"},
    {Family::CompleteBipartite, "complete-bipartite"},
    {Family::Empty, "empty"},
    {Family::GeneralizedStar, "gstar"},
    {Family::GeneralizedBull, "gbull"},
    {Family::Hypercube, "hypercube"},
    {Family::CliquePath, "cliquepath"},
    {Family::CliqueStar, "cliquestar"},
    {Family::CompleteMinusEdge, "kminuse"},
    {Family::Wheel, "wheel"},
    {Family::PathCyclePath, "pcp"},
}};

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorKind::InvalidParams, msg);
}

void require_count(const std::vector<int>& p, std::size_t k, std::string_view fam) {
  require(p.size() == k, std::string(fam) + " expects " + std::to_string(k) + " parameter(s)");
}

}  // namespace

std::optional<Family> family_from_name(std::string_view name) {
  for (const auto& f : kFamilyNames)
    if (f.name == name) return f.family;
  if (name == "star") return Family::CliqueStar;
  return std::nullopt;
}

std::string_view family_name(Family family) {
  for (const auto& f : kFamilyNames)
    if (f.family == family) return f.name;
  return "unknown";
}

Graph path_graph(int n) {
  require(n >= 1, "path needs n >= 1");
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle_graph(int n) {
  require(n >= 3, "cycle needs n >= 3");
  Graph g = path_graph(n);
  g.add_edge(0, n - 1);
  return g;
}

Graph complete_graph(int n) {
  require(n >= 1, "complete graph needs n >= 1");
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph complete_bipartite_graph(int m, int n) {
  require(m >= 1 && n >= 1, "complete bipartite needs m, n >= 1");
  Graph g(m + n);
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < n; ++v) g.add_edge(u, m + v);
  return g;
}

Graph empty_graph(int n) {
  require(n >= 1, "empty graph needs n >= 1");
  return Graph(n);
}

namespace {

Graph clique_path(const std::vector<int>& sizes) {
  require(sizes.size() >= 2, "clique-path needs s >= 2");
  for (int s : sizes) require(s >= 2, "clique-path needs every n_i >= 2");
  // Cliques share consecutive summing vertices; vertices are numbered clique by clique.
  int n = 1;
  for (int s : sizes) n += s - 1;
  Graph g(n);
  int start = 0;
  for (int s : sizes) {
    for (int i = start; i < start + s; ++i)
      for (int j = i + 1; j < start + s; ++j) g.add_edge(i, j);
    start += s - 1;
  }
  return g;
}

Graph clique_star(const std::vector<int>& sizes) {
  require(sizes.size() >= 2, "clique-star needs s >= 2");
  for (int s : sizes) require(s >= 2, "clique-star needs every n_i >= 2");
  int n = 1;
  for (int s : sizes) n += s - 1;
  Graph g(n);
  const int center = n - 1;
  int start = 0;
  for (int s : sizes) {
    const int l = s - 1;
    for (int i = start; i < start + l; ++i) {
      g.add_edge(i, center);
      for (int j = i + 1; j < start + l; ++j) g.add_edge(i, j);
    }
    start += l;
  }
  return g;
}

Graph hypercube(int d) {
  require(d >= 1 && d <= 12, "hypercube needs 1 <= d <= 12");
  Graph g = path_graph(2);
  for (int i = 2; i <= d; ++i) g = product(ProductKind::Cartesian, g, path_graph(2));
  return g;
}

}  // namespace

Graph make_family(Family family, const std::vector<int>& p) {
  const auto name = family_name(family);
  switch (family) {
    case Family::Path:
      require_count(p, 1, name);
      return path_graph(p[0]);
    case Family::Cycle:
      require_count(p, 1, name);
      return cycle_graph(p[0]);
    case Family::Complete:
      require_count(p, 1, name);
      return complete_graph(p[0]);
    case Family::CompleteBipartite:
      require_count(p, 2, name);
      return complete_bipartite_graph(p[0], p[1]);
    case Family::Empty:
      require_count(p, 1, name);
      return empty_graph(p[0]);
    case Family::GeneralizedStar: {
      require(p.size() == 2 || (p.size() == 3 && p[2] == 1), "gstar expects [a,b] or [a,b,1]");
      const int a = p[0], b = p[1];
      require(a >= 1 && b >= 1, "gstar needs a, b >= 1 (leaf on an interior vertex)");
      Graph g = path_graph(a + b + 1);
      return add_vertex(g, {a});
    }
    case Family::GeneralizedBull: {
      require_count(p, 2, name);
      const int a = p[0], b = p[1];
      require(a >= 0 && b >= 0, "gbull needs a, b >= 0");
      Graph g = path_graph(a + b + 3);
      g.add_edge(a, a + 2);
      return g;
    }
    case Family::Hypercube:
      require_count(p, 1, name);
      return hypercube(p[0]);
    case Family::CliquePath:
      return clique_path(p);
    case Family::CliqueStar:
      return clique_star(p);
    case Family::CompleteMinusEdge: {
      require_count(p, 1, name);
      require(p[0] >= 2, "kminuse needs n >= 2");
      Graph g = complete_graph(p[0]);
      g.remove_edge(0, 1);
      return g;
    }
    case Family::Wheel: {
      require_count(p, 1, name);
      require(p[0] >= 4, "wheel needs n >= 4 (cycle of n-1 plus hub)");
      Graph rim = cycle_graph(p[0] - 1);
      return join(rim, Graph(1));
    }
    case Family::PathCyclePath: {
      require_count(p, 1, name);
      const int k = p[0];
      require(k >= 1, "pcp needs k >= 1");
      // First path 0..k with x = k; cycle x, w, y, z; second path y..y+k.
      const int x = k, w = k + 1, y = k + 2, z = k + 3;
      Graph g(2 * k + 4);
      for (int i = 0; i < k; ++i) g.add_edge(i, i + 1);
      g.add_edge(x, w);
      g.add_edge(w, y);
      g.add_edge(y, z);
      g.add_edge(z, x);
      int prev = y;
      for (int i = 0; i < k; ++i) {
        g.add_edge(prev, z + 1 + i);
        prev = z + 1 + i;
      }
      return g;
    }
  }
  throw Error(ErrorKind::InvalidParams, "unknown family");
}

// ---- operations ---------------------------------------------------------------

Graph product(ProductKind kind, const Graph& g, const Graph& h) {
  const int a = g.order(), b = h.order();
  if (a == 0 || b == 0) throw Error(ErrorKind::InvalidParams, "product of empty vertex set");
  Graph out(a * b);
  auto idx = [b](int u, int up) { return u * b + up; };
  for (int u = 0; u < a; ++u)
    for (int up = 0; up < b; ++up)
      for (int v = 0; v < a; ++v)
        for (int vp = 0; vp < b; ++vp) {
          const int i = idx(u, up), j = idx(v, vp);
          if (i >= j) continue;
          const bool cart = (u == v && h.has_edge(up, vp)) || (up == vp && g.has_edge(u, v));
          const bool tens = u != v && up != vp && g.has_edge(u, v) && h.has_edge(up, vp);
          bool on = false;
          switch (kind) {
            case ProductKind::Cartesian: on = cart; break;
            case ProductKind::Tensor: on = tens; break;
            case ProductKind::Strong: on = cart || tens; break;
          }
          if (on) out.add_edge(i, j);
        }
  return out;
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  Graph out(g.order() + h.order());
  for (auto [u, v] : g.edges()) out.add_edge(u, v);
  for (auto [u, v] : h.edges()) out.add_edge(u + g.order(), v + g.order());
  return out;
}

Graph join(const Graph& g, const Graph& h) {
  Graph out = disjoint_union(g, h);
  for (int u = 0; u < g.order(); ++u)
    for (int v = 0; v < h.order(); ++v) out.add_edge(u, g.order() + v);
  return out;
}

Graph complement(const Graph& g) { return Graph(g.order(), g.non_edges()); }

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  Graph out(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (g.has_edge(vertices[i], vertices[j])) out.add_edge(static_cast<int>(i), static_cast<int>(j));
  return out;
}

Graph add_vertex(const Graph& g, const std::vector<int>& alpha) {
  Graph out(g.order() + 1);
  for (auto [u, v] : g.edges()) out.add_edge(u, v);
  for (int a : alpha) {
    if (a < 0 || a >= g.order()) throw Error(ErrorKind::MissingElement, "attachment vertex out of range");
    out.add_edge(a, g.order());
  }
  return out;
}

namespace {

Edge normalized(Edge e) { return e.first < e.second ? e : Edge{e.second, e.first}; }

void require_edge(const Graph& g, Edge e) {
  if (e.first < 0 || e.second < 0 || e.first >= g.order() || e.second >= g.order() || e.first == e.second ||
      !g.has_edge(e.first, e.second))
    throw Error(ErrorKind::MissingElement, "edge not present");
}

}  // namespace

Graph apply_op(const Graph& g, const GraphOp& op) {
  switch (op.kind) {
    case OpKind::DeleteVertex: {
      if (op.vertex < 0 || op.vertex >= g.order()) throw Error(ErrorKind::MissingElement, "vertex not present");
      std::vector<int> keep;
      for (int v = 0; v < g.order(); ++v)
        if (v != op.vertex) keep.push_back(v);
      return induced_subgraph(g, keep);
    }
    case OpKind::DeleteEdge: {
      require_edge(g, op.edge);
      Graph out = g;
      out.remove_edge(op.edge.first, op.edge.second);
      return out;
    }
    case OpKind::ContractEdge: {
      require_edge(g, op.edge);
      const auto [u, v] = normalized(op.edge);
      auto relabel = [v = v, u = u](int w) { return w == v ? u : (w > v ? w - 1 : w); };
      Graph out(g.order() - 1);
      for (auto [a, b] : g.edges()) {
        const int x = relabel(a), y = relabel(b);
        if (x != y) out.add_edge(x, y);
      }
      return out;
    }
    case OpKind::SubdivideEdge: {
      require_edge(g, op.edge);
      Graph out(g.order() + 1);
      for (auto [a, b] : g.edges())
        if (Edge{a, b} != normalized(op.edge)) out.add_edge(a, b);
      out.add_edge(op.edge.first, g.order());
      out.add_edge(op.edge.second, g.order());
      return out;
    }
    case OpKind::VertexSum: {
      if (!op.other) throw Error(ErrorKind::InvalidParams, "vertex sum needs a second graph");
      const Graph& h = *op.other;
      if (op.vertex < 0 || op.vertex >= g.order() || op.other_vertex < 0 || op.other_vertex >= h.order())
        throw Error(ErrorKind::MissingElement, "summing vertex not present");
      std::vector<int> map(h.order());
      int next = g.order();
      for (int w = 0; w < h.order(); ++w) map[w] = w == op.other_vertex ? op.vertex : next++;
      Graph out(g.order() + h.order() - 1);
      for (auto [a, b] : g.edges()) out.add_edge(a, b);
      for (auto [a, b] : h.edges()) out.add_edge(map[a], map[b]);
      return out;
    }
    case OpKind::Join:
      if (!op.other) throw Error(ErrorKind::InvalidParams, "join needs a second graph");
      return join(g, *op.other);
    case OpKind::Product:
      if (!op.other) throw Error(ErrorKind::InvalidParams, "product needs a second graph");
      return product(op.product, g, *op.other);
  }
  throw Error(ErrorKind::InvalidParams, "unknown operation");
}

GraphOpLog log_op(const Graph& g, const GraphOp& op) { return GraphOpLog{g, op, apply_op(g, op)}; }

}  // namespace qmin
