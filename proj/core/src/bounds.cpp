#include "qmin/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <queue>
#include <sstream>
#include <thread>

#include "qmin/canonical.hpp"
#include "qmin/error.hpp"

namespace qmin {

namespace {

std::string vertex_list(const std::vector<int>& vs) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? "," : "") << vs[i] + 1;
  os << '}';
  return os.str();
}

Contribution lower(int value, std::string citation, std::string detail) {
  return {value, Direction::Lower, std::move(citation), std::move(detail), {}};
}

Contribution upper(int value, std::string citation, std::string detail, std::string witness = {}) {
  return {value, Direction::Upper, std::move(citation), std::move(detail), std::move(witness)};
}

std::vector<Contribution> lower_impl(const Graph& g, const BoundOptions& opts, std::vector<std::string>* notes) {
  if (!is_connected(g)) throw Error(ErrorKind::DisconnectedGraph, "lower bounds need a connected graph");
  const int n = g.order();
  std::vector<Contribution> out;
  if (n == 1) {
    out.push_back(lower(1, "single-vertex", "q(K_1) = 1"));
    return out;
  }
  out.push_back(lower(2, "has-edge", "a matrix with a nonzero off-diagonal entry is not scalar"));

  const auto usp = unique_shortest_path_witness(g);
  if (usp.value >= 2)
    out.push_back(lower(usp.value, "unique-shortest-path",
                        "unique shortest path " + vertex_list(usp.path) + " of length " + std::to_string(usp.value - 1)));

  if (n <= 32) {
    try {
      const auto zf = zero_forcing(g, opts.zero_forcing_budget);
      out.push_back(lower((n + zf.size - 1) / zf.size, "zero-forcing-nullity",
                          "Z(G) = " + std::to_string(zf.size) + " via forcing set " + vertex_list(zf.set) +
                              ", M(G) <= Z(G)"));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TooLarge) throw;
      if (notes) notes->push_back("zero-forcing-nullity skipped: subset budget exhausted");
    }
  } else if (notes) {
    notes->push_back("zero-forcing-nullity skipped: more than 32 vertices");
  }

  const int max_size = opts.independent_set_max > 0 ? std::min(opts.independent_set_max, n) : n;
  if (auto v = independent_set_violation(g, max_size, opts.independent_set_budget))
    out.push_back(lower(3, "independent-set-common-neighbours",
                        "independent set " + vertex_list(v->set) + " has common-neighbour union " +
                            vertex_list(v->common)));

  if (auto cls = near_path_class(g)) {
    if (cls->kind == NearPathKind::Path)
      out.push_back(lower(n, "path", "G is the path P_" + std::to_string(n)));
    else
      out.push_back(lower(n - 1, "near-path-class", "G is a " + std::string(near_path_name(cls->kind)) + " (" +
                                                        std::to_string(cls->a) + "," + std::to_string(cls->b) + ")"));
  }
  return out;
}

std::vector<Contribution> upper_impl(const Graph& g, const Registry& registry, const BoundOptions& opts,
                                     std::vector<std::string>* notes) {
  const int n = g.order();
  std::vector<Contribution> out;
  out.push_back(upper(n, "order", "q(G) <= |V(G)|"));
  if (n >= 3 && !(near_path_class(g) && near_path_class(g)->kind == NearPathKind::Path))
    out.push_back(upper(n - 1, "non-path", "only the path attains q = n"));

  for (const auto& rec : registry.lookup(g)) {
    if (!rec.verified.pattern) continue;
    out.push_back(upper(rec.summary.q, "witness", rec.source + ", m = " + [&] {
      std::string s = "(";
      for (std::size_t i = 0; i < rec.summary.ordered_mult.size(); ++i)
        s += (i ? "," : "") + std::to_string(rec.summary.ordered_mult[i]);
      return s + ")";
    }(), rec.id));
    out.push_back(upper(rec.rank + 1, "min-rank-witness", "rank " + std::to_string(rec.rank) + " matrix in S(G), mr(G) <= rank",
                        rec.id));
  }

  if (n <= opts.hamilton_limit) {
    if (has_hamilton_cycle(g)) out.push_back(upper((n + 1) / 2, "hamilton-cycle", "G has a Hamilton cycle"));
  } else if (notes) {
    notes->push_back("hamilton-cycle skipped: more than " + std::to_string(opts.hamilton_limit) + " vertices");
  }

  if (n <= opts.lift_limit) {
    if (auto lb = lift_bound(g, registry)) {
      std::vector<int> image(lb->embedding.begin(), lb->embedding.end());
      out.push_back(upper(lb->value, "spanning-subgraph-lift",
                          "SMP witness " + lb->witness_id + " on a spanning subgraph, vertices mapped to " +
                              vertex_list(image),
                          lb->witness_id));
    }
  } else if (notes) {
    notes->push_back("spanning-subgraph-lift skipped: more than " + std::to_string(opts.lift_limit) + " vertices");
  }

  int best_join = std::numeric_limits<int>::max();
  std::string join_detail;
  for (const auto& [x, y] : join_splits(g)) {
    const int a = static_cast<int>(std::max(x.size(), y.size()));
    const int b = static_cast<int>(std::min(x.size(), y.size()));
    const int value = 2 + (a - b);
    if (value < best_join) {
      best_join = value;
      join_detail = "join of connected parts " + vertex_list(x) + " and " + vertex_list(y);
    }
  }
  if (best_join == 2)
    out.push_back(upper(2, "join-equal-order", join_detail));
  else if (best_join != std::numeric_limits<int>::max())
    out.push_back(upper(best_join, "join-order-difference", join_detail));
  return out;
}

void finish(BoundReport& r) {
  r.lo = 1;
  r.hi = std::numeric_limits<int>::max();
  for (const auto& c : r.contributions) {
    if (c.direction == Direction::Lower) r.lo = std::max(r.lo, c.value);
    if (c.direction == Direction::Upper) r.hi = std::min(r.hi, c.value);
    if (!c.witness_id.empty() &&
        std::find(r.witnesses.begin(), r.witnesses.end(), c.witness_id) == r.witnesses.end())
      r.witnesses.push_back(c.witness_id);
  }
  if (r.hi == std::numeric_limits<int>::max()) r.hi = r.graph.order();
  if (r.lo > r.hi)
    throw Error(ErrorKind::InfeasibleReport, "lower bound " + std::to_string(r.lo) + " exceeds upper bound " +
                                                 std::to_string(r.hi));
  r.determined = r.lo == r.hi;
}

}  // namespace

std::string_view direction_name(Direction d) { return d == Direction::Lower ? "lower" : "upper"; }

std::vector<Contribution> lower_bounds(const Graph& g, const BoundOptions& opts) { return lower_impl(g, opts, nullptr); }

std::vector<Contribution> upper_bounds(const Graph& g, const Registry& registry, const BoundOptions& opts) {
  return upper_impl(g, registry, opts, nullptr);
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> join_splits(const Graph& g) {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  const auto comps = components(complement(g));
  const int c = static_cast<int>(comps.size());
  if (c < 2 || c > 20) return out;
  // Component 0 always sits on the first side so each split appears once.
  for (std::uint32_t mask = 1; mask < (1u << c) - 1; mask += 2) {
    std::vector<int> x, y;
    for (int i = 0; i < c; ++i) {
      auto& side = (mask >> i & 1) ? x : y;
      side.insert(side.end(), comps[i].begin(), comps[i].end());
    }
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (is_connected(induced_subgraph(g, x)) && is_connected(induced_subgraph(g, y))) out.emplace_back(x, y);
  }
  return out;
}

BoundReport bound(const Graph& g, const Registry& registry, const BoundOptions& opts) {
  if (g.order() < 1) throw Error(ErrorKind::InvalidParams, "graph needs at least one vertex");
  BoundReport r;
  r.graph = g;
  if (is_connected(g)) {
    r.contributions = lower_impl(g, opts, &r.notes);
    auto up = upper_impl(g, registry, opts, &r.notes);
    r.contributions.insert(r.contributions.end(), up.begin(), up.end());
    finish(r);
    return r;
  }
  int lo = 1, hi = 1;
  for (const auto& comp : components(g)) {
    const auto sub = bound(induced_subgraph(g, comp), registry, opts);
    lo = std::max(lo, sub.lo);
    hi = std::max(hi, sub.hi);
    for (const auto& w : sub.witnesses) r.witnesses.push_back(w);
    r.contributions.push_back(lower(sub.lo, "component-maximum", "component " + vertex_list(comp) + " has q >= " +
                                                                     std::to_string(sub.lo)));
    for (const auto& note : sub.notes) r.notes.push_back("component " + vertex_list(comp) + ": " + note);
  }
  r.contributions.push_back(upper(hi, "component-maximum", "q(G) is the maximum of q over the components"));
  for (const auto& rec : registry.lookup(g))
    if (rec.verified.pattern) r.contributions.push_back(upper(rec.summary.q, "witness", rec.source, rec.id));
  finish(r);
  return r;
}

std::vector<int> hopcroft_karp(const std::vector<std::vector<int>>& adj, int right_count) {
  const int left = static_cast<int>(adj.size());
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> match_l(left, -1), match_r(right_count, -1), dist(left);
  auto bfs = [&] {
    std::queue<int> q;
    bool reachable = false;
    for (int u = 0; u < left; ++u) {
      dist[u] = match_l[u] < 0 ? 0 : kInf;
      if (match_l[u] < 0) q.push(u);
    }
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        const int w = match_r[v];
        if (w < 0) {
          reachable = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return reachable;
  };
  auto dfs = [&](auto&& self, int u) -> bool {
    for (int v : adj[u]) {
      const int w = match_r[v];
      if (w < 0 || (dist[w] == dist[u] + 1 && self(self, w))) {
        match_l[u] = v;
        match_r[v] = u;
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  };
  while (bfs())
    for (int u = 0; u < left; ++u)
      if (match_l[u] < 0) dfs(dfs, u);
  return match_l;
}

TableVerdict table_consistency(int n, const std::map<int, int>& multiset, const Registry& registry,
                               const BoundOptions& opts) {
  if (n > 6) throw Error(ErrorKind::TooLarge, "table consistency limited to order <= 6");
  const auto graphs = enumerate_connected(n);
  int total = 0;
  for (const auto& [value, count] : multiset) total += count;
  if (total != static_cast<int>(graphs.size()))
    throw Error(ErrorKind::CountMismatch, "order " + std::to_string(n) + " has " + std::to_string(graphs.size()) +
                                              " connected graphs but the value multiset has " + std::to_string(total));
  TableVerdict v;
  v.order = n;
  v.graphs = static_cast<int>(graphs.size());
  v.reports.resize(graphs.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(graphs.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < graphs.size(); i = next++) {
      try {
        v.reports[i] = bound(graphs[i], registry, opts);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw Error(ErrorKind::InfeasibleReport, e);

  std::vector<int> slot_value;
  for (const auto& [value, count] : multiset)
    for (int k = 0; k < count; ++k) slot_value.push_back(value);
  std::vector<std::vector<int>> adj(graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (v.reports[i].determined) ++v.determined;
    for (std::size_t s = 0; s < slot_value.size(); ++s)
      if (v.reports[i].lo <= slot_value[s] && slot_value[s] <= v.reports[i].hi) adj[i].push_back(static_cast<int>(s));
  }
  const auto match = hopcroft_karp(adj, static_cast<int>(slot_value.size()));
  v.assignment.assign(graphs.size(), -1);
  for (std::size_t i = 0; i < graphs.size(); ++i)
    if (match[i] >= 0) {
      ++v.matched;
      v.assignment[i] = slot_value[static_cast<std::size_t>(match[i])];
    }
  v.feasible = v.matched == v.graphs;
  return v;
}

}  // namespace qmin
