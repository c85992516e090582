#include "giantlab/percolation.hpp"

#include <algorithm>
#include <numeric>

#include "giantlab/errors.hpp"
#include "giantlab/rng.hpp"

namespace giantlab {

namespace {

void require_mask(const Graph& g, const EdgeMask& mask) {
  if (!mask.belongs_to(g)) throw ParameterError("edge mask was sampled for a different graph");
}

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), Vertex{0});
  }

  Vertex find(Vertex v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

private:
  std::vector<Vertex> parent_;
  std::vector<std::uint32_t> size_;
};

std::uint64_t fill_word(std::uint64_t seed, double p, std::size_t w, std::size_t m) {
  std::uint64_t bits = 0;
  const std::size_t lo = w * 64;
  const std::size_t hi = std::min(m, lo + 64);
  for (std::size_t e = lo; e < hi; ++e) {
    if (edge_uniform(seed, e) < p) bits |= std::uint64_t{1} << (e - lo);
  }
  return bits;
}

}  // namespace

EdgeMask::EdgeMask(const Graph& g, double p, std::uint64_t seed)
    : m_(g.num_edges()), p_(p), seed_(seed), fingerprint_(g.fingerprint()), words_((m_ + 63) / 64, 0) {}

EdgeMask EdgeMask::all_open(const Graph& g) {
  EdgeMask mask(g, 1.0, 0);
  for (EdgeId e = 0; e < mask.m_; ++e) mask.set(e, true);
  return mask;
}

EdgeMask EdgeMask::from_bits(const Graph& g, const std::vector<bool>& open) {
  if (open.size() != g.num_edges()) throw ParameterError("bit vector length differs from edge count");
  EdgeMask mask(g, 0.0, 0);
  for (EdgeId e = 0; e < open.size(); ++e) mask.set(e, open[e]);
  return mask;
}

void EdgeMask::set(EdgeId e, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (e & 63);
  if (value) {
    words_[e >> 6] |= bit;
  } else {
    words_[e >> 6] &= ~bit;
  }
}

std::size_t EdgeMask::count_open() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(__builtin_popcountll(w));
  return total;
}

EdgeMask sample(const Graph& g, double p, std::uint64_t seed, Exec exec) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must lie in [0, 1]");
  EdgeMask mask(g, p, seed);
  auto& words = mask.words();
  const std::size_t m = g.num_edges();
  const auto count = static_cast<std::ptrdiff_t>(words.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t w = 0; w < count; ++w) words[w] = fill_word(seed, p, w, m);
  } else {
    for (std::ptrdiff_t w = 0; w < count; ++w) words[w] = fill_word(seed, p, w, m);
  }
  return mask;
}

ComponentSummary components(const Graph& g, const EdgeMask& mask) {
  require_mask(g, mask);
  const std::size_t n = g.num_vertices();
  UnionFind uf(n);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (mask.open(e)) uf.unite(g.edge(e).first, g.edge(e).second);
  }

  // Component ids in order of smallest member, then ranked by size.
  std::vector<std::uint32_t> id_of_root(n, UINT32_MAX);
  std::vector<std::uint32_t> id(n);
  std::vector<std::size_t> size;
  for (Vertex v = 0; v < n; ++v) {
    const Vertex r = uf.find(v);
    if (id_of_root[r] == UINT32_MAX) {
      id_of_root[r] = static_cast<std::uint32_t>(size.size());
      size.push_back(0);
    }
    id[v] = id_of_root[r];
    ++size[id[v]];
  }
  std::vector<std::uint32_t> order(size.size());
  std::iota(order.begin(), order.end(), 0U);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return size[a] > size[b]; });
  std::vector<std::uint32_t> rank_of_id(size.size());
  for (std::uint32_t r = 0; r < order.size(); ++r) rank_of_id[order[r]] = r;

  ComponentSummary out;
  out.sizes.resize(size.size());
  for (std::uint32_t r = 0; r < order.size(); ++r) out.sizes[r] = size[order[r]];
  out.rank.resize(n);
  for (Vertex v = 0; v < n; ++v) out.rank[v] = rank_of_id[id[v]];
  out.giant_size = out.sizes.empty() ? 0 : out.sizes[0];
  out.second_size = out.sizes.size() > 1 ? out.sizes[1] : 0;

  out.degree_hist.assign(g.max_degree() + 1, 0);
  std::vector<std::uint32_t> open_deg(n, 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!mask.open(e)) continue;
    const auto [u, v] = g.edge(e);
    ++open_deg[u];
    ++open_deg[v];
    if (out.rank[u] == 0) ++out.giant_edges;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (out.rank[v] == 0) ++out.degree_hist[open_deg[v]];
  }
  if (out.giant_size > 0) {
    out.giant_excess = static_cast<std::int64_t>(out.giant_edges) - static_cast<std::int64_t>(out.giant_size) + 1;
  }
  return out;
}

namespace {

// Bridges of the subgraph induced by open edges on `keep`, restricted to the
// connected piece containing `start`. Iterative low-link.
std::size_t count_bridges(const Graph& g, const EdgeMask& mask, const std::vector<std::uint8_t>& keep,
                          Vertex start) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint32_t> disc(n, 0);
  std::vector<std::uint32_t> low(n, 0);
  struct Frame {
    Vertex v;
    EdgeId via;
    std::size_t next;
  };
  std::vector<Frame> stack;
  std::uint32_t timer = 0;
  std::size_t bridges = 0;
  const EdgeId none = UINT32_MAX;

  disc[start] = low[start] = ++timer;
  stack.push_back({start, none, 0});
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto nb = g.neighbors(f.v);
    const auto inc = g.incident_edges(f.v);
    if (f.next < nb.size()) {
      const std::size_t i = f.next++;
      const Vertex w = nb[i];
      const EdgeId e = inc[i];
      if (e == f.via || !keep[w] || !mask.open(e)) continue;
      if (disc[w] == 0) {
        disc[w] = low[w] = ++timer;
        stack.push_back({w, e, 0});
      } else {
        low[f.v] = std::min(low[f.v], disc[w]);
      }
      continue;
    }
    const Frame done = f;
    stack.pop_back();
    if (!stack.empty()) {
      Frame& parent = stack.back();
      low[parent.v] = std::min(low[parent.v], low[done.v]);
      if (low[done.v] > disc[parent.v]) ++bridges;
    }
  }
  return bridges;
}

}  // namespace

CoreSummary two_core(const Graph& g, const EdgeMask& mask, const ComponentSummary& comps) {
  require_mask(g, mask);
  const std::size_t n = g.num_vertices();
  CoreSummary out;
  out.in_core.assign(n, 1);
  std::vector<std::uint32_t> deg(n, 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!mask.open(e)) continue;
    ++deg[g.edge(e).first];
    ++deg[g.edge(e).second];
  }
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < n; ++v) {
    if (deg[v] <= 1) stack.push_back(v);
  }
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    if (!out.in_core[v]) continue;
    out.in_core[v] = 0;
    const auto nb = g.neighbors(v);
    const auto inc = g.incident_edges(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const Vertex w = nb[i];
      if (mask.open(inc[i]) && out.in_core[w] && --deg[w] == 1) stack.push_back(w);
    }
  }

  out.core_degree_hist.assign(g.max_degree() + 1, 0);
  std::vector<std::uint32_t> core_deg(n, 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    if (!mask.open(e) || !out.in_core[u] || !out.in_core[v]) continue;
    ++core_deg[u];
    ++core_deg[v];
    if (comps.rank[u] == 0) ++out.giant_core_edges;
  }
  Vertex first_giant_core = UINT32_MAX;
  for (Vertex v = 0; v < n; ++v) {
    if (!out.in_core[v]) continue;
    if (comps.rank[v] == 0) {
      ++out.giant_core_vertices;
      ++out.core_degree_hist[core_deg[v]];
      if (first_giant_core == UINT32_MAX) first_giant_core = v;
    } else {
      ++out.other_core_vertices;
    }
  }
  if (out.giant_core_vertices > 0) {
    out.giant_core_excess = static_cast<std::int64_t>(out.giant_core_edges) -
                            static_cast<std::int64_t>(out.giant_core_vertices) + 1;
    out.bridges = count_bridges(g, mask, out.in_core, first_giant_core);
  }
  return out;
}

CoreSummary two_core(const Graph& g, const EdgeMask& mask) { return two_core(g, mask, components(g, mask)); }

ClusterDiameter component_diameter(const Graph& g, const EdgeMask& mask, Vertex v) {
  require_mask(g, mask);
  if (v >= g.num_vertices()) throw ParameterError("vertex out of range");
  std::vector<std::int32_t> dist(g.num_vertices(), -1);
  std::vector<Vertex> queue{v};
  dist[v] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    const auto nb = g.neighbors(u);
    const auto inc = g.incident_edges(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (mask.open(inc[i]) && dist[nb[i]] < 0) {
        dist[nb[i]] = dist[u] + 1;
        queue.push_back(nb[i]);
      }
    }
  }
  return {dist[queue.back()], queue.size()};
}

namespace {

std::uint64_t extend_paths(const Graph& g, const EdgeMask& mask, std::vector<std::uint8_t>& on_path, Vertex v,
                           int remaining) {
  if (remaining == 0) return 1;
  std::uint64_t total = 0;
  on_path[v] = 1;
  const auto nb = g.neighbors(v);
  const auto inc = g.incident_edges(v);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    if (mask.open(inc[i]) && !on_path[nb[i]]) total += extend_paths(g, mask, on_path, nb[i], remaining - 1);
  }
  on_path[v] = 0;
  return total;
}

}  // namespace

std::uint64_t count_open_paths(const Graph& g, const EdgeMask& mask, const ComponentSummary& comps, int ell) {
  require_mask(g, mask);
  if (ell < 1) throw ParameterError("path length must be at least 1");
  if (ell == 1) return comps.giant_edges;
  std::vector<std::uint8_t> on_path(g.num_vertices(), 0);
  std::uint64_t directed = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (comps.rank[v] == 0) directed += extend_paths(g, mask, on_path, v, ell);
  }
  return directed / 2;
}

}  // namespace giantlab
