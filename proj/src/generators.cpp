#include "giantlab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "giantlab/diagnostics.hpp"
#include "giantlab/errors.hpp"
#include "giantlab/rng.hpp"

namespace giantlab {

namespace {

// Ceil/floor of values that are mathematically integral but may carry
// rounding noise (e.g. 2 * log_2(16) computed as 8.000000000000002).
int robust_ceil(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }
int robust_floor(double x) { return static_cast<int>(std::floor(x + 1e-9)); }

class GraphBuilder {
public:
  Vertex add_vertex(Region r) {
    labels_.push_back(r);
    return static_cast<Vertex>(labels_.size() - 1);
  }

  Vertex add_vertices(std::size_t count, Region r) {
    const auto first = static_cast<Vertex>(labels_.size());
    labels_.insert(labels_.end(), count, r);
    return first;
  }

  void add_edge(Vertex u, Vertex v) { edges_.emplace_back(u, v); }

  /// Path with `length` edges from a to b through fresh vertices.
  void add_path(Vertex a, Vertex b, int length, Region r) {
    Vertex prev = a;
    for (int i = 1; i < length; ++i) {
      const Vertex mid = add_vertex(r);
      add_edge(prev, mid);
      prev = mid;
    }
    add_edge(prev, b);
  }

  std::size_t size() const noexcept { return labels_.size(); }

  Graph build() && {
    const std::size_t n = labels_.size();
    return Graph::from_edges(n, std::move(edges_), std::move(labels_));
  }

private:
  std::vector<Edge> edges_;
  std::vector<Region> labels_;
};

struct TreeHandle {
  Vertex root;
  std::vector<Vertex> leaves;
};

TreeHandle append_t_tree(GraphBuilder& b, int k, int h, int h_star, int path_length, Region label) {
  TreeHandle t{b.add_vertex(label), {}};
  std::vector<Vertex> level{t.root};
  for (int j = 0; j < h; ++j) {
    std::vector<Vertex> next;
    next.reserve(level.size() * k);
    const bool subdivided = j >= h - h_star;
    for (Vertex a : level) {
      for (int c = 0; c < k; ++c) {
        const Vertex child = b.add_vertex(label);
        if (subdivided) {
          b.add_path(a, child, path_length, label);
        } else {
          b.add_edge(a, child);
        }
        next.push_back(child);
      }
    }
    level = std::move(next);
  }
  t.leaves = std::move(level);
  return t;
}

bool contains(const std::vector<Vertex>& v, Vertex x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

// ---------------------------------------------------------------------------

Graph random_graph_with_degrees(std::span<const int> degrees, std::uint64_t seed, int restart_budget) {
  const std::size_t n = degrees.size();
  std::vector<Vertex> points;
  for (std::size_t v = 0; v < n; ++v) {
    if (degrees[v] < 0 || static_cast<std::size_t>(degrees[v]) >= std::max<std::size_t>(n, 1)) {
      throw ParameterError("degree of vertex " + std::to_string(v) + " is not realizable");
    }
    points.insert(points.end(), degrees[v], static_cast<Vertex>(v));
  }
  if (points.size() % 2 != 0) {
    throw ParameterError("degree sum must be even");
  }

  std::vector<std::vector<Vertex>> nbr(n);
  std::vector<Edge> edges;
  for (int attempt = 0; attempt < restart_budget; ++attempt) {
    Rng rng(mix64(seed ^ mix64(static_cast<std::uint64_t>(attempt))));
    for (std::size_t v = 0; v < n; ++v) {
      nbr[v].clear();
      nbr[v].reserve(degrees[v]);
    }
    edges.clear();
    std::vector<Vertex> rem = points;
    auto legal = [&](Vertex u, Vertex v) { return u != v && !contains(nbr[u], v); };

    bool stuck = false;
    while (!rem.empty()) {
      const std::size_t r = rem.size();
      std::size_t i = 0;
      std::size_t j = 0;
      bool found = false;
      for (int t = 0; t < 64 && !found; ++t) {
        i = rng.below(r);
        j = rng.below(r - 1);
        if (j >= i) ++j;
        found = legal(rem[i], rem[j]);
      }
      if (!found && r <= 4096) {
        // Near the end of the pairing: sample uniformly among legal pairs.
        std::uint64_t seen = 0;
        for (std::size_t a = 0; a < r; ++a) {
          for (std::size_t c = a + 1; c < r; ++c) {
            if (legal(rem[a], rem[c]) && rng.below(++seen) == 0) {
              i = a;
              j = c;
              found = true;
            }
          }
        }
      } else if (!found) {
        for (int t = 0; t < 4096 && !found; ++t) {
          i = rng.below(r);
          j = rng.below(r - 1);
          if (j >= i) ++j;
          found = legal(rem[i], rem[j]);
        }
      }
      if (!found) {
        stuck = true;
        break;
      }
      const Vertex u = rem[i];
      const Vertex v = rem[j];
      nbr[u].push_back(v);
      nbr[v].push_back(u);
      edges.emplace_back(u, v);
      if (i < j) std::swap(i, j);
      rem[i] = rem.back();
      rem.pop_back();
      rem[j] = rem.back();
      rem.pop_back();
    }
    if (!stuck) {
      return Graph::from_edges(n, std::move(edges));
    }
  }
  throw GenerationError("pairing model failed after " + std::to_string(restart_budget) + " restarts");
}

Graph random_regular(std::size_t n, int d, std::uint64_t seed, int restart_budget) {
  if (d < 1) {
    throw ParameterError("degree must be positive");
  }
  if (n <= static_cast<std::size_t>(d)) {
    throw ParameterError("random_regular needs n > d");
  }
  if ((n * static_cast<std::size_t>(d)) % 2 != 0) {
    throw ParameterError("n*d must be even (n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
  }
  const std::vector<int> degrees(n, d);
  return random_graph_with_degrees(degrees, seed, restart_budget);
}

std::size_t moore_bound(int d, int girth) {
  if (girth <= 3) return static_cast<std::size_t>(d) + 1;
  const int r = girth / 2;
  std::size_t geometric = 0;
  std::size_t power = 1;
  for (int i = 0; i < r; ++i) {
    geometric += power;
    power *= static_cast<std::size_t>(d - 1);
  }
  if (girth % 2 == 1) {
    return 1 + static_cast<std::size_t>(d) * geometric;
  }
  // 2 * sum_{i < r} (d-1)^i
  return 2 * geometric;
}

namespace {

class GirthSearch {
public:
  GirthSearch(std::size_t m, int d, int min_girth, std::uint64_t seed, long budget)
      : m_(m), d_(d), reach_(std::max(min_girth, 3) - 2), adj_(m), rng_(seed), budget_(budget),
        mark_(m, 0) {}

  bool solve() {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    Vertex u = 0;
    while (u < m_ && adj_[u].size() == static_cast<std::size_t>(d_)) ++u;
    if (u == m_) return true;

    // Vertices within distance reach_ of u would close a cycle shorter than
    // the required girth.
    ++stamp_;
    std::vector<Vertex> frontier{u};
    mark_[u] = stamp_;
    for (int depth = 0; depth < reach_ && !frontier.empty(); ++depth) {
      std::vector<Vertex> next;
      for (Vertex x : frontier) {
        for (Vertex y : adj_[x]) {
          if (mark_[y] != stamp_) {
            mark_[y] = stamp_;
            next.push_back(y);
          }
        }
      }
      frontier = std::move(next);
    }
    std::vector<Vertex> candidates;
    for (Vertex w = 0; w < m_; ++w) {
      if (mark_[w] != stamp_ && adj_[w].size() < static_cast<std::size_t>(d_)) {
        candidates.push_back(w);
      }
    }
    if (candidates.size() < static_cast<std::size_t>(d_) - adj_[u].size()) return false;
    rng_.shuffle(candidates);
    for (Vertex w : candidates) {
      adj_[u].push_back(w);
      adj_[w].push_back(u);
      if (solve()) return true;
      adj_[u].pop_back();
      adj_[w].pop_back();
      if (exhausted_) return false;
    }
    return false;
  }

  bool exhausted() const noexcept { return exhausted_; }

  Graph graph() const {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < m_; ++u) {
      for (Vertex w : adj_[u]) {
        if (u < w) edges.emplace_back(u, w);
      }
    }
    return Graph::from_edges(m_, std::move(edges));
  }

private:
  std::size_t m_;
  int d_;
  int reach_;
  std::vector<std::vector<Vertex>> adj_;
  Rng rng_;
  long budget_;
  long nodes_ = 0;
  bool exhausted_ = false;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
};

}  // namespace

Graph high_girth_regular(std::size_t m, int d, int min_girth, std::uint64_t seed) {
  if (d < 1) throw ParameterError("degree must be positive");
  const std::size_t bound = moore_bound(d, min_girth);
  if (m < bound) {
    throw ParameterError("no " + std::to_string(d) + "-regular graph of girth >= " +
                         std::to_string(min_girth) + " on " + std::to_string(m) +
                         " vertices: Moore bound is " + std::to_string(bound));
  }
  if ((m * static_cast<std::size_t>(d)) % 2 != 0) {
    throw ParameterError("m*d must be even (m=" + std::to_string(m) + ", d=" + std::to_string(d) + ")");
  }
  constexpr int kRestarts = 20;
  const long budget = std::max<long>(200000, 50L * static_cast<long>(m) * d);
  for (int attempt = 0; attempt < kRestarts; ++attempt) {
    GirthSearch search(m, d, min_girth, mix64(seed ^ mix64(attempt)), budget);
    if (search.solve()) return search.graph();
    if (!search.exhausted()) {
      throw GenerationError("exhaustive search found no " + std::to_string(d) +
                            "-regular graph of girth >= " + std::to_string(min_girth) + " on " +
                            std::to_string(m) + " vertices; try a larger m");
    }
  }
  throw GenerationError("high-girth search budget exhausted; try a larger m");
}

Graph subdivide(const Graph& g, std::span<const Edge> selected, int length, Region fresh_label) {
  if (length < 1) throw ParameterError("subdivision length must be at least 1");
  std::vector<std::uint8_t> chosen(g.num_edges(), 0);
  for (const auto& [u, v] : selected) {
    const auto e = g.find_edge(u, v);
    if (!e) {
      throw ParameterError("edge " + std::to_string(u) + " " + std::to_string(v) + " is not in the graph");
    }
    chosen[*e] = 1;
  }
  if (length == 1) return g;

  GraphBuilder b;
  for (Vertex v = 0; v < g.num_vertices(); ++v) b.add_vertex(g.label(v));
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    if (chosen[e]) {
      b.add_path(u, v, length, fresh_label);
    } else {
      b.add_edge(u, v);
    }
  }
  return std::move(b).build();
}

SubdividedTree build_t_tree(int k, int h, int h_star, int path_length) {
  if (k < 2) throw ParameterError("tree arity must be at least 2");
  if (h < 0 || h_star < 0 || h_star > h) throw ParameterError("need 0 <= h_star <= h");
  if (path_length < 1) throw ParameterError("path length must be at least 1");
  GraphBuilder b;
  auto handle = append_t_tree(b, k, h, h_star, path_length, Region::none);
  return {std::move(b).build(), handle.root, std::move(handle.leaves)};
}

// ---------------------------------------------------------------------------

nlohmann::json Theorem2Report::to_json() const {
  auto opt = [](const std::optional<int>& g) -> nlohmann::json {
    return g ? nlohmann::json(*g) : nlohmann::json(nullptr);
  };
  return {
      {"kind", "theorem2"},
      {"n_target", params.n_target},
      {"alpha", params.alpha},
      {"d", params.d},
      {"p", params.p},
      {"delta", params.delta},
      {"gadget_size", params.gadget_size},
      {"gadget_girth", params.gadget_girth},
      {"seed", params.seed},
      {"h", h},
      {"L", chain_length},
      {"n1", n1},
      {"n1_hat", n1_hat},
      {"trees", trees},
      {"n2_hat", n2_hat},
      {"n2", n2},
      {"tree_vertices", tree_vertices},
      {"gadget_vertices", gadget_vertices},
      {"total_vertices", total_vertices},
      {"total_edges", total_edges},
      {"girth_h1", opt(girth_h1)},
      {"girth_h2", opt(girth_h2)},
      {"girth_gadget", opt(girth_gadget)},
      {"check_disconnect", {{"lhs", disconnect.lhs}, {"rhs", disconnect.rhs}, {"pass", disconnect.pass}}},
      {"check_subcritical_chain",
       {{"lhs", subcritical.lhs}, {"rhs", subcritical.rhs}, {"pass", subcritical.pass}}},
      {"regular", regular},
  };
}

Theorem2Build theorem2_build(const Theorem2Params& prm) {
  const int d = prm.d;
  if (d < 3) throw ParameterError("theorem2: d must be at least 3");
  if (!(prm.p > 1.0 / (d - 1) && prm.p < 1.0)) throw ParameterError("theorem2: p must lie in (1/(d-1), 1)");
  if (!(prm.alpha > 0.0 && prm.alpha < 1.0)) throw ParameterError("theorem2: alpha must lie in (0, 1)");
  if (!(prm.delta > 0.0 && prm.delta <= 0.5)) throw ParameterError("theorem2: delta must lie in (0, 0.5]");
  if (prm.n_target < 16) throw ParameterError("theorem2: n_target too small");

  const double n = static_cast<double>(prm.n_target);
  const double log_n = std::log(n) / std::log(d - 1.0);
  Theorem2Report rep;
  rep.params = prm;
  rep.h = robust_ceil(0.5 * (1.0 - prm.alpha) * log_n);
  rep.chain_length =
      robust_ceil((2.0 + prm.alpha) / ((1.0 - prm.alpha) * (std::log(1.0 / prm.p) / std::log(d - 1.0))));
  if (rep.h < 1 || rep.chain_length < 1) {
    throw ParameterError("theorem2: parameters give a nonpositive tree depth or chain length");
  }

  rep.n1 = static_cast<std::size_t>(robust_floor(std::pow(n, prm.alpha)));
  if ((rep.n1 * d) % 2 != 0) ++rep.n1;
  if (rep.n1 <= static_cast<std::size_t>(d)) throw ParameterError("theorem2: n^alpha must exceed d");

  const Graph h1 = random_regular(rep.n1, d, mix64(prm.seed ^ 0x4831ULL));
  rep.girth_h1 = girth(h1);

  // Greedy matching in edge order, truncated to ceil(delta * n1) edges.
  const auto want = static_cast<std::size_t>(std::ceil(prm.delta * static_cast<double>(rep.n1)));
  std::vector<std::uint8_t> matched(rep.n1, 0);
  std::vector<std::uint8_t> in_matching(h1.num_edges(), 0);
  std::vector<Edge> matching;
  for (EdgeId e = 0; e < h1.num_edges() && matching.size() < want; ++e) {
    const auto [u, v] = h1.edge(e);
    if (!matched[u] && !matched[v]) {
      matched[u] = matched[v] = 1;
      in_matching[e] = 1;
      matching.push_back(h1.edge(e));
    }
  }

  const Graph gadget = high_girth_regular(prm.gadget_size, d, prm.gadget_girth, prm.seed);
  rep.girth_gadget = girth(gadget);
  const auto [gx, gy] = gadget.edge(0);

  GraphBuilder b;
  b.add_vertices(rep.n1, Region::h1);
  for (EdgeId e = 0; e < h1.num_edges(); ++e) {
    if (!in_matching[e]) b.add_edge(h1.edge(e).first, h1.edge(e).second);
  }
  std::vector<Vertex> hat_v1;
  for (const auto& [u, v] : matching) {
    const Vertex s = b.add_vertex(Region::subdiv);
    b.add_edge(u, s);
    b.add_edge(s, v);
    hat_v1.push_back(s);
  }
  rep.n1_hat = hat_v1.size();

  auto add_chain = [&](Vertex a, Vertex z) {
    Vertex prev = a;
    for (int i = 0; i < rep.chain_length; ++i) {
      const Vertex base = b.add_vertices(gadget.num_vertices(), Region::gadget);
      for (EdgeId e = 1; e < gadget.num_edges(); ++e) {
        b.add_edge(base + gadget.edge(e).first, base + gadget.edge(e).second);
      }
      b.add_edge(prev, base + gx);
      prev = base + gy;
    }
    b.add_edge(prev, z);
  };

  std::vector<Vertex> leaves;
  for (Vertex s : hat_v1) {
    for (int t = 0; t < d - 2; ++t) {
      const Vertex root = b.add_vertex(Region::tree);
      b.add_edge(s, root);
      ++rep.trees;
      ++rep.tree_vertices;
      std::vector<Vertex> level{root};
      for (int j = 0; j < rep.h; ++j) {
        std::vector<Vertex> next;
        for (Vertex a : level) {
          for (int c = 0; c < d - 1; ++c) {
            const bool leaf = j + 1 == rep.h;
            const Vertex child = b.add_vertex(leaf ? Region::h2 : Region::tree);
            if (!leaf) ++rep.tree_vertices;
            add_chain(a, child);
            next.push_back(child);
          }
        }
        level = std::move(next);
      }
      leaves.insert(leaves.end(), level.begin(), level.end());
    }
  }
  rep.n2_hat = leaves.size();

  // H2 fills the budget of non-gadget vertices up to n_target.
  const std::size_t non_gadget = rep.n1 + rep.n1_hat + rep.tree_vertices + rep.n2_hat;
  std::size_t n2 = prm.n_target > non_gadget ? prm.n_target - non_gadget : 0;
  n2 = std::max({n2, rep.n2_hat, static_cast<std::size_t>(d) + 1});
  if (d % 2 == 1 && n2 % 2 == 1) ++n2;
  rep.n2 = n2;

  std::vector<int> h2_degrees(rep.n2_hat, d - 1);
  h2_degrees.resize(rep.n2_hat + n2, d);
  const Graph h2 = random_graph_with_degrees(h2_degrees, mix64(prm.seed ^ 0x4832ULL));
  rep.girth_h2 = girth(h2);
  std::vector<Vertex> h2_map(leaves);
  const Vertex fresh = b.add_vertices(n2, Region::h2);
  for (std::size_t i = 0; i < n2; ++i) h2_map.push_back(fresh + static_cast<Vertex>(i));
  for (const auto& [u, v] : h2.edges()) b.add_edge(h2_map[u], h2_map[v]);

  Graph g = std::move(b).build();
  rep.total_vertices = g.num_vertices();
  rep.total_edges = g.num_edges();
  rep.gadget_vertices = g.count_label(Region::gadget);
  rep.regular = true;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) != static_cast<std::size_t>(d)) {
      rep.regular = false;
      break;
    }
  }

  const double hl = static_cast<double>(rep.h) * rep.chain_length;
  rep.disconnect.lhs = std::pow(prm.p, hl) * std::pow(n, 0.5 * (1.0 + prm.alpha));
  rep.disconnect.rhs = 1.0 / std::sqrt(n);
  rep.disconnect.pass = rep.disconnect.lhs <= rep.disconnect.rhs;
  rep.subcritical.lhs = std::pow(prm.p, rep.chain_length);
  rep.subcritical.rhs = 1.0 / (static_cast<double>(d) * d);
  rep.subcritical.pass = rep.subcritical.lhs < rep.subcritical.rhs;
  return {std::move(g), rep};
}

// ---------------------------------------------------------------------------

nlohmann::json Theorem3Report::to_json() const {
  return {
      {"kind", "theorem3"},
      {"p", params.p},
      {"eps", params.eps},
      {"n_target", params.n_target},
      {"seed", params.seed},
      {"d", d},
      {"h_n", h_n},
      {"alpha", alpha},
      {"beta", beta},
      {"subdivided_levels", subdivided_levels},
      {"N", leaves},
      {"t1_vertices", t1_vertices},
      {"t2_vertices", t2_vertices},
      {"f_vertices", f_vertices},
      {"total_vertices", total_vertices},
      {"total_edges", total_edges},
      {"max_degree", max_degree},
      {"t1_height", t1_height},
      {"t2_height", t2_height},
      {"diameter_bound", diameter_bound},
  };
}

Theorem3Build theorem3_build(const Theorem3Params& prm) {
  if (!(prm.p > 0.0 && prm.p < 1.0)) throw ParameterError("theorem3: p must lie in (0, 1)");
  if (!(prm.eps > 0.0 && prm.eps < 1.0)) throw ParameterError("theorem3: eps must lie in (0, 1)");

  Theorem3Report rep;
  rep.params = prm;
  const double log_inv_p = std::log(1.0 / prm.p);
  const double d_real = std::pow(1.0 / prm.p, 2.0 / prm.eps);
  if (d_real > 1e7) throw ParameterError("theorem3: branching factor too large to build");
  rep.d = std::max(2, robust_ceil(d_real));
  const double n = static_cast<double>(prm.n_target);
  rep.h_n = robust_floor(std::log(n) / std::log(static_cast<double>(rep.d)));
  if (rep.h_n < 2) {
    throw ParameterError("theorem3: d = " + std::to_string(rep.d) + " is too large for n_target = " +
                         std::to_string(prm.n_target) + " (need d^2 <= n)");
  }
  const double log_d = std::log(static_cast<double>(rep.d)) / log_inv_p;
  rep.alpha = robust_ceil(log_d / prm.eps);
  rep.beta = robust_ceil(2.0 * log_d);
  rep.subdivided_levels = robust_floor(prm.eps * rep.h_n);

  GraphBuilder b;
  const auto t1 = append_t_tree(b, rep.d, rep.h_n, rep.subdivided_levels, rep.alpha, Region::t1);
  rep.t1_vertices = b.size();
  const auto t2 = append_t_tree(b, rep.d, rep.h_n, rep.subdivided_levels, rep.beta, Region::t2);
  rep.t2_vertices = b.size() - rep.t1_vertices;
  rep.leaves = t1.leaves.size();

  const std::size_t big_n = rep.leaves;
  std::vector<int> f0_degrees(big_n, rep.d);
  if ((big_n * rep.d) % 2 != 0) f0_degrees.back() = rep.d - 1;
  const Graph f0 = random_graph_with_degrees(f0_degrees, mix64(prm.seed ^ 0x4630ULL));
  const Vertex w0 = b.add_vertices(big_n, Region::f);
  for (const auto& [u, v] : f0.edges()) b.add_path(w0 + u, w0 + v, rep.beta, Region::f);
  for (std::size_t i = 0; i < big_n; ++i) {
    b.add_edge(t1.leaves[i], w0 + static_cast<Vertex>(i));
    b.add_edge(t2.leaves[i], w0 + static_cast<Vertex>(i));
  }
  rep.f_vertices = b.size() - rep.t1_vertices - rep.t2_vertices;

  Graph g = std::move(b).build();
  rep.total_vertices = g.num_vertices();
  rep.total_edges = g.num_edges();
  rep.max_degree = g.max_degree();
  rep.t1_height = rep.h_n + (rep.alpha - 1) * rep.subdivided_levels;
  rep.t2_height = rep.h_n + (rep.beta - 1) * rep.subdivided_levels;
  rep.diameter_bound = (1.0 + 6.0 * prm.eps) * std::log(static_cast<double>(rep.total_vertices)) / log_inv_p;
  return {std::move(g), t1.root, rep};
}

}  // namespace giantlab
