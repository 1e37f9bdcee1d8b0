#include "qmin/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "qmin/error.hpp"

namespace qmin {

namespace {

std::string bits_in_order(const Graph& g, const std::vector<int>& order) {
  const int n = g.order();
  std::string bits;
  bits.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) bits.push_back(g.has_edge(order[i], order[j]) ? '1' : '0');
  return bits;
}

CanonicalForm exhaustive_form(const Graph& g) {
  const int n = g.order();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  CanonicalForm best{n, bits_in_order(g, perm), perm};
  // Compare incrementally so most permutations are rejected after a few bits.
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
  while (std::next_permutation(perm.begin(), perm.end())) {
    int cmp = 0;
    std::size_t k = 0;
    for (int i = 0; i < n && cmp == 0; ++i)
      for (int j = i + 1; j < n; ++j, ++k) {
        const char c = adj[perm[i]][perm[j]] ? '1' : '0';
        if (c != best.bits[k]) {
          cmp = c < best.bits[k] ? -1 : 1;
          break;
        }
      }
    if (cmp < 0) {
      best.bits = bits_in_order(g, perm);
      best.order = perm;
    }
  }
  return best;
}

/// Equitable refinement: colours are ranks of (colour, sorted neighbour colours).
std::vector<int> refine(const std::vector<std::vector<int>>& nbrs, std::vector<int> colour) {
  const int n = static_cast<int>(colour.size());
  while (true) {
    std::vector<std::pair<std::vector<int>, int>> sig(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> s;
      s.reserve(nbrs[v].size() + 1);
      s.push_back(colour[v]);
      std::vector<int> nc;
      nc.reserve(nbrs[v].size());
      for (int w : nbrs[v]) nc.push_back(colour[w]);
      std::sort(nc.begin(), nc.end());
      s.insert(s.end(), nc.begin(), nc.end());
      sig[v] = {std::move(s), v};
    }
    std::vector<std::vector<int>> keys(n);
    for (int v = 0; v < n; ++v) keys[v] = sig[v].first;
    std::vector<std::vector<int>> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v)
      next[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
    const int before = static_cast<int>(std::set<int>(colour.begin(), colour.end()).size());
    if (static_cast<int>(sorted.size()) == before) return next;
    colour = std::move(next);
  }
}

struct RefinementSearch {
  const Graph& g;
  std::vector<std::vector<int>> nbrs;
  std::uint64_t budget;
  std::uint64_t leaves = 0;
  bool have = false;
  std::string best;
  std::vector<int> best_order;

  void run(std::vector<int> colour) {
    colour = refine(nbrs, std::move(colour));
    const int n = g.order();
    std::map<int, std::vector<int>> cells;
    for (int v = 0; v < n; ++v) cells[colour[v]].push_back(v);
    if (static_cast<int>(cells.size()) == n) {
      if (++leaves > budget) throw Error(ErrorKind::TooLarge, "canonical form leaf budget exhausted");
      std::vector<int> order(n);
      for (int v = 0; v < n; ++v) order[colour[v]] = v;
      std::string bits = bits_in_order(g, order);
      if (!have || bits < best) {
        have = true;
        best = std::move(bits);
        best_order = std::move(order);
      }
      return;
    }
    // Target: first smallest non-singleton cell.
    const std::vector<int>* target = nullptr;
    for (const auto& [c, cell] : cells)
      if (cell.size() > 1 && (!target || cell.size() < target->size())) target = &cell;
    const int cell_colour = colour[target->front()];
    for (int v : *target) {
      // Individualize v: it keeps the cell's colour, the rest move one step up.
      std::vector<int> next(n);
      for (int w = 0; w < n; ++w) next[w] = 2 * colour[w] + ((colour[w] == cell_colour && w != v) ? 1 : 0);
      run(std::move(next));
    }
  }
};

}  // namespace

CanonicalForm canonical_form(const Graph& g, std::uint64_t leaf_budget) {
  const int n = g.order();
  if (n <= 7) return exhaustive_form(g);
  RefinementSearch s{g, {}, leaf_budget, 0, false, {}, {}};
  s.nbrs.resize(n);
  for (int v = 0; v < n; ++v) s.nbrs[v] = g.neighbors(v);
  s.run(std::vector<int>(n, 0));
  return CanonicalForm{n, s.best, s.best_order};
}

std::string canonical_key(const Graph& g) { return canonical_form(g).key(); }

bool is_isomorphic(const Graph& g, const Graph& h) {
  if (g.order() != h.order() || g.size() != h.size()) return false;
  return canonical_form(g) == canonical_form(h);
}

Graph canonical_graph(const Graph& g) {
  const auto cf = canonical_form(g);
  return induced_subgraph(g, cf.order);
}

std::vector<Graph> enumerate_connected(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParams, "enumeration needs n >= 1");
  if (n > 7) throw Error(ErrorKind::TooLarge, "enumeration limited to n <= 7");
  // Every connected graph has a non-cut vertex, so extending each connected graph
  // on n-1 vertices by one vertex with a nonempty neighbourhood reaches them all.
  std::map<std::string, Graph> level{{canonical_key(Graph(1)), Graph(1)}};
  for (int k = 2; k <= n; ++k) {
    std::map<std::string, Graph> next;
    for (const auto& [key, base] : level) {
      const int m = base.order();
      for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> alpha;
        for (int v = 0; v < m; ++v)
          if (mask >> v & 1) alpha.push_back(v);
        Graph cand = add_vertex(base, alpha);
        auto cf = canonical_form(cand);
        if (!next.count(cf.key())) next.emplace(cf.key(), induced_subgraph(cand, cf.order));
      }
    }
    level = std::move(next);
  }
  std::vector<Graph> out;
  out.reserve(level.size());
  for (auto& [key, g] : level) out.push_back(std::move(g));
  return out;
}

}  // namespace qmin
