#include "giantlab/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "giantlab/diagnostics.hpp"
#include "giantlab/errors.hpp"

namespace giantlab {

namespace {

// DFS that always descends into the unvisited neighbour with the fewest
// unvisited neighbours; returns the root-to-deepest tree path.
std::vector<Vertex> deepest_dfs_path(const Graph& g, const EdgeMask& mask, Vertex start) {
  const std::size_t n = g.num_vertices();
  std::vector<std::int32_t> depth(n, -1);
  std::vector<Vertex> parent(n, start);
  auto free_degree = [&](Vertex v) {
    int c = 0;
    const auto nb = g.neighbors(v);
    const auto inc = g.incident_edges(v);
    for (std::size_t i = 0; i < nb.size(); ++i) c += mask.open(inc[i]) && depth[nb[i]] < 0;
    return c;
  };

  std::vector<Vertex> stack{start};
  depth[start] = 0;
  Vertex deepest = start;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    const auto nb = g.neighbors(v);
    const auto inc = g.incident_edges(v);
    Vertex next = v;
    int best = INT32_MAX;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (!mask.open(inc[i]) || depth[nb[i]] >= 0) continue;
      const int f = free_degree(nb[i]);
      if (f < best) {
        best = f;
        next = nb[i];
      }
    }
    if (next == v) {
      stack.pop_back();
      continue;
    }
    depth[next] = depth[v] + 1;
    parent[next] = v;
    if (depth[next] > depth[deepest]) deepest = next;
    stack.push_back(next);
  }

  std::vector<Vertex> path;
  for (Vertex v = deepest;; v = parent[v]) {
    path.push_back(v);
    if (v == start) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::vector<Vertex> longest_path_lb(const Graph& g, const EdgeMask& mask, const ComponentSummary& comps,
                                    int sweeps) {
  if (!mask.belongs_to(g)) throw ParameterError("edge mask was sampled for a different graph");
  if (g.num_vertices() == 0) return {};
  Vertex start = 0;
  while (comps.rank[start] != 0) ++start;

  std::vector<Vertex> best = deepest_dfs_path(g, mask, start);
  for (int s = 1; s < sweeps; ++s) {
    auto path = deepest_dfs_path(g, mask, best.back());
    if (path.size() <= best.size()) break;
    best = std::move(path);
  }
  return best;
}

bool is_open_simple_path(const Graph& g, const EdgeMask& mask, const std::vector<Vertex>& path) {
  if (path.empty()) return false;
  std::vector<Vertex> sorted = path;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (sorted.back() >= g.num_vertices()) return false;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const auto e = g.find_edge(path[i - 1], path[i]);
    if (!e || !mask.open(*e)) return false;
  }
  return true;
}

Subgraph giant_subgraph(const Graph& g, const EdgeMask& mask, const ComponentSummary& comps) {
  if (!mask.belongs_to(g)) throw ParameterError("edge mask was sampled for a different graph");
  Subgraph out;
  std::vector<Vertex> local(g.num_vertices(), UINT32_MAX);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (comps.rank[v] == 0) {
      local[v] = static_cast<Vertex>(out.original.size());
      out.original.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    if (mask.open(e) && comps.rank[u] == 0) edges.emplace_back(local[u], local[v]);
  }
  out.graph = Graph::from_edges(out.original.size(), std::move(edges));
  return out;
}

// ---------------------------------------------------------------------------

Separator separator_search(const Graph& g, int lanczos_steps) {
  const std::size_t n = g.num_vertices();
  if (!is_connected(g)) throw ParameterError("separator search needs a connected graph");

  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  if (n > 2) {
    const auto spectral = laplacian_lambda2(g, true, 1e-10, lanczos_steps);
    const auto& f = spectral.fiedler;
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return f[a] < f[b]; });
  }

  auto balanced = [n](std::size_t a, std::size_t b) { return 3 * a <= 2 * n && 3 * b <= 2 * n; };

  std::size_t best_size = n;
  std::size_t best_prefix = 0;
  bool best_inner = false;
  bool found = false;

  std::vector<std::uint8_t> in_prefix(n, 0);
  std::vector<std::uint32_t> prefix_nbrs(n, 0);
  std::vector<std::uint32_t> outside_nbrs(n, 0);
  std::size_t outer = 0;
  std::size_t inner = 0;
  for (std::size_t i = 0;; ++i) {
    // Outer boundary: S = N(P) \ P, A = P.
    if (balanced(i, n - i - outer) && (!found || outer < best_size)) {
      best_size = outer;
      best_prefix = i;
      best_inner = false;
      found = true;
    }
    // Inner boundary: S = vertices of P with a neighbour outside P.
    if (balanced(i - inner, n - i) && (!found || inner < best_size)) {
      best_size = inner;
      best_prefix = i;
      best_inner = true;
      found = true;
    }
    if (i == n) break;
    const Vertex v = order[i];
    in_prefix[v] = 1;
    if (prefix_nbrs[v] > 0) --outer;
    outside_nbrs[v] = static_cast<std::uint32_t>(g.degree(v)) - prefix_nbrs[v];
    if (outside_nbrs[v] > 0) ++inner;
    for (Vertex w : g.neighbors(v)) {
      if (++prefix_nbrs[w] == 1 && !in_prefix[w]) ++outer;
      if (in_prefix[w] && w != v && --outside_nbrs[w] == 0) --inner;
    }
  }

  Separator out;
  if (!found) {
    out.separator = order;
    std::sort(out.separator.begin(), out.separator.end());
    return out;
  }
  std::vector<std::uint8_t> prefix(n, 0);
  for (std::size_t i = 0; i < best_prefix; ++i) prefix[order[i]] = 1;
  std::vector<std::uint8_t> side(n);  // 0 = A, 1 = S, 2 = B
  for (Vertex v = 0; v < n; ++v) side[v] = prefix[v] ? 0 : 2;
  for (Vertex v = 0; v < n; ++v) {
    if (!prefix[v]) continue;
    for (Vertex w : g.neighbors(v)) {
      if (prefix[w]) continue;
      side[best_inner ? v : w] = 1;
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    (side[v] == 0 ? out.a : side[v] == 1 ? out.separator : out.b).push_back(v);
  }
  return out;
}

bool verify_separator(const Graph& g, const Separator& s) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint8_t> side(n, 255);
  auto assign = [&](const std::vector<Vertex>& part, std::uint8_t tag) {
    for (Vertex v : part) {
      if (v >= n || side[v] != 255) return false;
      side[v] = tag;
    }
    return true;
  };
  if (!assign(s.a, 0) || !assign(s.separator, 1) || !assign(s.b, 2)) return false;
  if (s.a.size() + s.separator.size() + s.b.size() != n) return false;
  if (3 * s.a.size() > 2 * n || 3 * s.b.size() > 2 * n) return false;
  for (const auto& [u, v] : g.edges()) {
    if ((side[u] == 0 && side[v] == 2) || (side[u] == 2 && side[v] == 0)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

struct Partition {
  std::vector<std::int32_t> piece;
  std::vector<std::vector<Vertex>> members;
};

Partition ball_partition(const Graph& g, std::size_t ball) {
  const std::size_t n = g.num_vertices();
  Partition out;
  out.piece.assign(n, -1);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (out.piece[s] >= 0) continue;
    const auto id = static_cast<std::int32_t>(out.members.size());
    queue.assign(1, s);
    out.piece[s] = id;
    for (std::size_t head = 0; head < queue.size() && queue.size() < ball; ++head) {
      for (Vertex w : g.neighbors(queue[head])) {
        if (out.piece[w] >= 0) continue;
        out.piece[w] = id;
        queue.push_back(w);
        if (queue.size() >= ball) break;
      }
    }
    out.members.push_back(queue);
  }
  return out;
}

std::vector<std::size_t> greedy_clique(const std::vector<std::vector<std::int32_t>>& adj) {
  const std::size_t count = adj.size();
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return adj[a].size() > adj[b].size(); });
  auto adjacent = [&](std::size_t a, std::size_t b) {
    return std::binary_search(adj[a].begin(), adj[a].end(), static_cast<std::int32_t>(b));
  };

  std::vector<std::size_t> best;
  const std::size_t starts = std::min<std::size_t>(count, 64);
  for (std::size_t s = 0; s < starts; ++s) {
    const std::size_t root = order[s];
    if (adj[root].size() + 1 <= best.size()) break;
    std::vector<std::size_t> cand(adj[root].begin(), adj[root].end());
    std::stable_sort(cand.begin(), cand.end(),
                     [&](std::size_t a, std::size_t b) { return adj[a].size() > adj[b].size(); });
    std::vector<std::size_t> clique{root};
    for (std::size_t c : cand) {
      if (std::all_of(clique.begin(), clique.end(), [&](std::size_t k) { return adjacent(c, k); })) {
        clique.push_back(c);
      }
    }
    if (clique.size() > best.size()) best = std::move(clique);
  }
  return best;
}

// Grows new branch sets from unused vertices, each joined to every existing
// set by a shortest path through unused vertices. Gives up after a fixed
// number of failed seeds.
void augment(const Graph& g, std::vector<std::vector<Vertex>>& sets, int max_failures) {
  const std::size_t n = g.num_vertices();
  std::vector<std::int32_t> owner(n, -1);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (Vertex v : sets[i]) owner[v] = static_cast<std::int32_t>(i);
  }
  std::vector<std::int32_t> seen(n, -1);
  std::vector<Vertex> parent(n);
  std::vector<Vertex> queue;
  std::int32_t stamp = 0;
  int failures = 0;
  Vertex cursor = 0;

  while (failures < max_failures) {
    while (cursor < n && owner[cursor] != -1) ++cursor;
    if (cursor >= n) return;
    const auto t = static_cast<std::int32_t>(sets.size());
    std::vector<Vertex> x{cursor};
    owner[cursor] = t;
    std::vector<std::uint8_t> touches(sets.size(), 0);
    auto absorb = [&](Vertex v) {
      for (Vertex w : g.neighbors(v)) {
        if (owner[w] >= 0 && owner[w] < t) touches[owner[w]] = 1;
      }
    };
    absorb(cursor);

    bool ok = true;
    for (std::size_t i = 0; i < sets.size() && ok; ++i) {
      if (touches[i]) continue;
      ++stamp;
      queue.clear();
      for (Vertex v : x) {
        seen[v] = stamp;
        queue.push_back(v);
      }
      Vertex hit = UINT32_MAX;
      for (std::size_t head = 0; head < queue.size() && hit == UINT32_MAX; ++head) {
        const Vertex u = queue[head];
        for (Vertex w : g.neighbors(u)) {
          if (owner[w] != -1 || seen[w] == stamp) continue;
          seen[w] = stamp;
          parent[w] = u;
          queue.push_back(w);
          const auto nb = g.neighbors(w);
          if (std::any_of(nb.begin(), nb.end(), [&](Vertex z) { return owner[z] == static_cast<std::int32_t>(i); })) {
            hit = w;
            break;
          }
        }
      }
      if (hit == UINT32_MAX) {
        ok = false;
        break;
      }
      for (Vertex v = hit; owner[v] != t; v = parent[v]) {
        owner[v] = t;
        x.push_back(v);
        absorb(v);
      }
    }
    if (ok) {
      sets.push_back(std::move(x));
    } else {
      for (Vertex v : x) owner[v] = -1;
      ++cursor;
      ++failures;
    }
  }
}

}  // namespace

MinorWitness minor_order_lb(const Graph& g) {
  const std::size_t n = g.num_vertices();
  MinorWitness best;
  if (n == 0) return best;
  best.branch_sets = {{0}};
  const auto limit = static_cast<std::size_t>(2.0 * std::sqrt(static_cast<double>(n))) + 1;
  for (std::size_t ball = 1; ball <= std::max<std::size_t>(limit, 1); ball *= 2) {
    const Partition part = ball_partition(g, ball);
    std::vector<std::vector<std::int32_t>> adj(part.members.size());
    for (const auto& [u, v] : g.edges()) {
      const auto a = part.piece[u];
      const auto b = part.piece[v];
      if (a == b) continue;
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& row : adj) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    std::vector<std::vector<Vertex>> sets;
    for (std::size_t c : greedy_clique(adj)) sets.push_back(part.members[c]);
    augment(g, sets, 32);
    if (sets.size() > best.order()) best.branch_sets = std::move(sets);
  }
  return best;
}

bool verify_minor(const Graph& g, const MinorWitness& w) {
  const std::size_t n = g.num_vertices();
  std::vector<std::int32_t> owner(n, -1);
  for (std::size_t i = 0; i < w.branch_sets.size(); ++i) {
    if (w.branch_sets[i].empty()) return false;
    for (Vertex v : w.branch_sets[i]) {
      if (v >= n || owner[v] != -1) return false;
      owner[v] = static_cast<std::int32_t>(i);
    }
  }
  // Each branch set connected inside itself.
  std::vector<std::uint8_t> seen(n, 0);
  for (std::size_t i = 0; i < w.branch_sets.size(); ++i) {
    const auto& set = w.branch_sets[i];
    std::vector<Vertex> queue{set[0]};
    seen[set[0]] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (Vertex x : g.neighbors(queue[head])) {
        if (owner[x] == static_cast<std::int32_t>(i) && !seen[x]) {
          seen[x] = 1;
          queue.push_back(x);
        }
      }
    }
    if (queue.size() != set.size()) return false;
  }
  const std::size_t t = w.branch_sets.size();
  std::vector<std::uint8_t> touch(t * t, 0);
  for (const auto& [u, v] : g.edges()) {
    const auto a = owner[u];
    const auto b = owner[v];
    if (a < 0 || b < 0 || a == b) continue;
    touch[a * t + b] = touch[b * t + a] = 1;
  }
  for (std::size_t a = 0; a < t; ++a) {
    for (std::size_t b = a + 1; b < t; ++b) {
      if (!touch[a * t + b]) return false;
    }
  }
  return true;
}

}  // namespace giantlab
