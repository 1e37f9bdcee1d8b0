#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <queue>

#include "qmin/error.hpp"
#include "qmin/graph.hpp"

namespace qmin {

std::vector<int> distances_from(const Graph& g, int source) {
  std::vector<int> dist(g.order(), -1);
  std::queue<int> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int w : g.neighbors(u))
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
  }
  return dist;
}

std::vector<std::vector<int>> components(const Graph& g) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(g.order(), 0);
  for (int s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    std::vector<int> comp;
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (int w : g.neighbors(u))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const Graph& g) { return g.order() <= 1 || components(g).size() == 1; }

UniquePathWitness unique_shortest_path_witness(const Graph& g) {
  if (!is_connected(g)) throw Error(ErrorKind::DisconnectedGraph, "unique shortest path bound needs a connected graph");
  const int n = g.order();
  UniquePathWitness best;
  if (n >= 1) {
    best.u = best.v = 0;
    best.path = {0};
  }
  std::vector<std::vector<int>> nbrs(n);
  for (int v = 0; v < n; ++v) nbrs[v] = g.neighbors(v);
  for (int s = 0; s < n; ++s) {
    // Layered BFS with path counts saturated at 2; exact for the "== 1" test.
    std::vector<int> dist(n, -1), count(n, 0), parent(n, -1);
    std::queue<int> q;
    dist[s] = 0;
    count[s] = 1;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int w : nbrs[u]) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          q.push(w);
        }
        if (dist[w] == dist[u] + 1) count[w] = std::min(2, count[w] + count[u]);
      }
    }
    for (int t = s + 1; t < n; ++t) {
      if (count[t] != 1 || dist[t] + 1 <= best.value) continue;
      best.value = dist[t] + 1;
      best.u = s;
      best.v = t;
      best.path.clear();
      for (int w = t; w != -1; w = parent[w]) best.path.push_back(w);
      std::reverse(best.path.begin(), best.path.end());
    }
  }
  return best;
}

int unique_shortest_path_bound(const Graph& g) { return unique_shortest_path_witness(g).value; }

// ---- zero forcing -------------------------------------------------------------

namespace {

std::vector<std::uint64_t> neighbor_masks(const Graph& g) {
  std::vector<std::uint64_t> nb(g.order(), 0);
  for (auto [u, v] : g.edges()) {
    nb[u] |= std::uint64_t{1} << v;
    nb[v] |= std::uint64_t{1} << u;
  }
  return nb;
}

std::uint64_t force_closure(const std::vector<std::uint64_t>& nb, std::uint64_t colored) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::uint64_t rest = colored;
    while (rest) {
      const int v = std::countr_zero(rest);
      rest &= rest - 1;
      const std::uint64_t white = nb[v] & ~colored;
      if (white && !(white & (white - 1))) {
        colored |= white;
        changed = true;
      }
    }
  }
  return colored;
}

}  // namespace

bool is_zero_forcing_set(const Graph& g, const std::vector<int>& set) {
  if (g.order() > 64) throw Error(ErrorKind::TooLarge, "zero forcing check limited to 64 vertices");
  std::uint64_t colored = 0;
  for (int v : set) colored |= std::uint64_t{1} << v;
  const std::uint64_t all = g.order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.order()) - 1;
  return force_closure(neighbor_masks(g), colored) == all;
}

ZeroForcingResult zero_forcing(const Graph& g, std::uint64_t subset_budget) {
  const int n = g.order();
  if (n > 32) throw Error(ErrorKind::TooLarge, "zero forcing search limited to 32 vertices");
  if (n == 0) return {};
  const auto nb = neighbor_masks(g);
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  int min_degree = n;
  for (int v = 0; v < n; ++v) min_degree = std::min(min_degree, g.degree(v));
  std::uint64_t spent = 0;
  // Z >= minimum degree: the first force needs a coloured vertex with all but one neighbour coloured.
  for (int k = std::max(1, min_degree); k <= n; ++k) {
    std::uint64_t s = (std::uint64_t{1} << k) - 1;
    while (s <= all) {
      if (++spent > subset_budget) throw Error(ErrorKind::TooLarge, "zero forcing subset budget exhausted");
      if (force_closure(nb, s) == all) {
        ZeroForcingResult r;
        r.size = k;
        for (int v = 0; v < n; ++v)
          if (s >> v & 1) r.set.push_back(v);
        return r;
      }
      const std::uint64_t c = s & (~s + 1);
      const std::uint64_t r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }
  return {n, [n] {
            std::vector<int> v(n);
            std::iota(v.begin(), v.end(), 0);
            return v;
          }()};
}

int zero_forcing_number(const Graph& g) { return zero_forcing(g).size; }

// ---- Hamilton cycles ----------------------------------------------------------

bool has_hamilton_cycle(const Graph& g) {
  const int n = g.order();
  if (n > 16) throw Error(ErrorKind::TooLarge, "Hamilton cycle DP limited to 16 vertices");
  if (n < 3) return false;
  const auto nb = neighbor_masks(g);
  // reach[mask]: end vertices of paths from vertex 0 covering exactly mask.
  std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
  reach[1] = 1;
  for (std::uint32_t mask = 1; mask < (1u << n); mask += 2) {
    std::uint32_t ends = reach[mask];
    while (ends) {
      const int v = std::countr_zero(ends);
      ends &= ends - 1;
      std::uint32_t next = static_cast<std::uint32_t>(nb[v]) & ~mask;
      while (next) {
        const int w = std::countr_zero(next);
        next &= next - 1;
        reach[mask | (1u << w)] |= 1u << w;
      }
    }
  }
  const std::uint32_t full = (1u << n) - 1;
  return (reach[full] & static_cast<std::uint32_t>(nb[0])) != 0;
}

// ---- independent sets ---------------------------------------------------------

std::optional<IndependentSetViolation> check_independent_set(const Graph& g, const std::vector<int>& candidate) {
  if (candidate.size() < 2) return std::nullopt;
  for (std::size_t i = 0; i < candidate.size(); ++i)
    for (std::size_t j = i + 1; j < candidate.size(); ++j)
      if (candidate[i] == candidate[j] || g.has_edge(candidate[i], candidate[j])) return std::nullopt;
  std::vector<char> in_union(g.order(), 0);
  for (std::size_t i = 0; i < candidate.size(); ++i)
    for (std::size_t j = i + 1; j < candidate.size(); ++j)
      for (int w = 0; w < g.order(); ++w)
        if (g.has_edge(candidate[i], w) && g.has_edge(candidate[j], w)) in_union[w] = 1;
  IndependentSetViolation out;
  out.set = candidate;
  std::sort(out.set.begin(), out.set.end());
  for (int w = 0; w < g.order(); ++w)
    if (in_union[w]) out.common.push_back(w);
  // Rows of the set restricted to the union are pairwise orthogonal when q = 2; the count
  // only binds for rows that are nonzero there, i.e. every vertex needs a neighbour in it.
  for (int v : candidate) {
    bool touches = false;
    for (int w : out.common) touches |= g.has_edge(v, w);
    if (!touches) return std::nullopt;
  }
  const std::size_t u = out.common.size();
  if (u > 0 && u < candidate.size()) return out;
  return std::nullopt;
}

std::optional<IndependentSetViolation> independent_set_violation(const Graph& g, int max_size,
                                                                 std::uint64_t budget) {
  if (!is_connected(g)) throw Error(ErrorKind::DisconnectedGraph, "independent set rule needs a connected graph");
  const int n = g.order();
  std::uint64_t spent = 0;
  std::vector<int> current;
  std::optional<IndependentSetViolation> found;
  // Depth-first over independent sets in lexicographic order, smallest sets first.
  for (int k = 2; k <= max_size && !found; ++k) {
    auto dfs = [&](auto&& self, int start) -> void {
      if (found || spent > budget) return;
      if (static_cast<int>(current.size()) == k) {
        ++spent;
        found = check_independent_set(g, current);
        return;
      }
      for (int v = start; v < n && !found; ++v) {
        bool ok = true;
        for (int w : current)
          if (g.has_edge(v, w)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        current.push_back(v);
        self(self, v + 1);
        current.pop_back();
      }
    };
    dfs(dfs, 0);
  }
  return found;
}

// ---- spanning subgraphs -------------------------------------------------------

std::optional<std::vector<int>> is_spanning_subgraph_of(const Graph& h, const Graph& g) {
  const int n = h.order();
  if (n != g.order()) throw Error(ErrorKind::OrderMismatch, "spanning subgraph test needs equal orders");
  if (n > 10) throw Error(ErrorKind::TooLarge, "spanning subgraph search limited to 10 vertices");
  if (h.size() > g.size()) return std::nullopt;
  std::vector<int> hdeg(n), gdeg(n);
  for (int v = 0; v < n; ++v) {
    hdeg[v] = h.degree(v);
    gdeg[v] = g.degree(v);
  }
  {
    auto a = hdeg, b = gdeg;
    std::sort(a.rbegin(), a.rend());
    std::sort(b.rbegin(), b.rend());
    for (int i = 0; i < n; ++i)
      if (a[i] > b[i]) return std::nullopt;
  }
  // Place h vertices in BFS order from a max-degree vertex so constraints bite early.
  std::vector<int> order;
  std::vector<char> placed(n, 0);
  while (static_cast<int>(order.size()) < n) {
    int start = -1;
    for (int v = 0; v < n; ++v)
      if (!placed[v] && (start < 0 || hdeg[v] > hdeg[start])) start = v;
    std::queue<int> q;
    q.push(start);
    placed[start] = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      order.push_back(u);
      auto nb = h.neighbors(u);
      std::sort(nb.begin(), nb.end(), [&](int a, int b) { return hdeg[a] > hdeg[b]; });
      for (int w : nb)
        if (!placed[w]) {
          placed[w] = 1;
          q.push(w);
        }
    }
  }
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  auto solve = [&](auto&& self, int depth) -> bool {
    if (depth == n) return true;
    const int hv = order[depth];
    for (int gv = 0; gv < n; ++gv) {
      if (used[gv] || gdeg[gv] < hdeg[hv]) continue;
      bool ok = true;
      for (int d = 0; d < depth && ok; ++d) {
        const int hu = order[d];
        if (h.has_edge(hv, hu) && !g.has_edge(gv, map[hu])) ok = false;
      }
      if (!ok) continue;
      map[hv] = gv;
      used[gv] = 1;
      if (self(self, depth + 1)) return true;
      used[gv] = 0;
      map[hv] = -1;
    }
    return false;
  };
  if (solve(solve, 0)) return map;
  return std::nullopt;
}

// ---- near-path classes --------------------------------------------------------

namespace {

bool is_path_graph(const Graph& g) {
  if (g.order() == 0) return false;
  if (g.size() != g.order() - 1 || !is_connected(g)) return false;
  for (int v = 0; v < g.order(); ++v)
    if (g.degree(v) > 2) return false;
  return true;
}

/// Vertex sequence of a path graph, starting at an end.
std::vector<int> path_sequence(const Graph& g) {
  int start = 0;
  for (int v = 0; v < g.order(); ++v)
    if (g.degree(v) <= 1) {
      start = v;
      break;
    }
  std::vector<int> seq{start};
  int prev = -1, cur = start;
  while (true) {
    int next = -1;
    for (int w : g.neighbors(cur))
      if (w != prev) next = w;
    if (next < 0) break;
    seq.push_back(next);
    prev = cur;
    cur = next;
  }
  return seq;
}

}  // namespace

std::string_view near_path_name(NearPathKind kind) {
  switch (kind) {
    case NearPathKind::Path: return "path";
    case NearPathKind::PathPlusIsolated: return "path+isolated";
    case NearPathKind::GeneralizedStar: return "generalized-star";
    case NearPathKind::GeneralizedBull: return "generalized-bull";
  }
  return "unknown";
}

std::optional<NearPathClass> near_path_class(const Graph& g) {
  const int n = g.order();
  if (n == 0) return std::nullopt;
  if (is_path_graph(g)) return NearPathClass{NearPathKind::Path, n, 0};
  const auto comps = components(g);
  if (comps.size() == 2) {
    for (int c = 0; c < 2; ++c)
      if (comps[c].size() == 1 && is_path_graph(induced_subgraph(g, comps[1 - c])))
        return NearPathClass{NearPathKind::PathPlusIsolated, static_cast<int>(comps[1 - c].size()), 0};
    return std::nullopt;
  }
  if (comps.size() != 1) return std::nullopt;
  if (g.size() == n - 1) {
    // Tree: exactly one branch vertex of degree 3 with a pendant leaf.
    int branch = -1;
    for (int v = 0; v < n; ++v) {
      const int d = g.degree(v);
      if (d > 3) return std::nullopt;
      if (d == 3) {
        if (branch >= 0) return std::nullopt;
        branch = v;
      }
    }
    if (branch < 0) return std::nullopt;
    std::vector<int> arms;
    for (int w : g.neighbors(branch)) {
      int len = 1, prev = branch, cur = w;
      while (g.degree(cur) == 2) {
        for (int x : g.neighbors(cur))
          if (x != prev) {
            prev = cur;
            cur = x;
            break;
          }
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] != 1) return std::nullopt;
    return NearPathClass{NearPathKind::GeneralizedStar, arms[1], arms[2]};
  }
  if (g.size() == n) {
    for (auto [u, v] : g.edges()) {
      Graph t = g;
      t.remove_edge(u, v);
      if (!is_path_graph(t)) continue;
      const auto seq = path_sequence(t);
      std::vector<int> pos(n);
      for (int i = 0; i < n; ++i) pos[seq[i]] = i;
      const int a = std::min(pos[u], pos[v]);
      if (std::abs(pos[u] - pos[v]) == 2) {
        const int b = n - a - 3;
        return NearPathClass{NearPathKind::GeneralizedBull, std::min(a, b), std::max(a, b)};
      }
    }
  }
  return std::nullopt;
}

}  // namespace qmin
