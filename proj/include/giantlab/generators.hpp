#pragma once

// Graph generators: random regular graphs, high-girth regular graphs, edge
// subdivision, subdivided k-ary trees, and the two adversarial expander
// constructions (a polynomially large second component, and a long-range
// component at the root of a graph with no giant).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "giantlab/graph.hpp"

namespace giantlab {

inline constexpr int kDefaultRestartBudget = 1000;

/// Simple graph with the given degree sequence from the pairing model:
/// random unpaired points are matched, pairs that would create a loop or a
/// multi-edge are redrawn, and the whole pairing restarts when no legal pair
/// is left. Deterministic for a fixed seed.
Graph random_graph_with_degrees(std::span<const int> degrees, std::uint64_t seed,
                                int restart_budget = kDefaultRestartBudget);

/// Simple d-regular graph on n vertices. Requires n*d even and n > d.
Graph random_regular(std::size_t n, int d, std::uint64_t seed,
                     int restart_budget = kDefaultRestartBudget);

/// Lower bound on the order of a d-regular graph with girth >= girth.
std::size_t moore_bound(int d, int girth);

/// d-regular graph on m vertices with girth >= min_girth, by backtracking
/// edge insertion that never closes a cycle shorter than min_girth.
/// Throws ParameterError when m is below the Moore bound and GenerationError
/// when the search budget is exhausted.
Graph high_girth_regular(std::size_t m, int d, int min_girth, std::uint64_t seed = 0);

/// Replaces every edge in `selected` by a path with `length` edges through
/// length-1 fresh vertices appended after the existing ones.
Graph subdivide(const Graph& g, std::span<const Edge> selected, int length,
                Region fresh_label = Region::subdiv);

struct SubdividedTree {
  Graph graph;
  Vertex root = 0;
  std::vector<Vertex> leaves;  // the k^h deepest tree vertices, in BFS order
};

/// k-ary tree of depth h whose parent-child edges below depth h - h_star are
/// subdivided into paths of length path_length. Root is vertex 0.
SubdividedTree build_t_tree(int k, int h, int h_star, int path_length);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct Theorem2Params {
  std::size_t n_target = 10000;
  double alpha = 0.5;
  int d = 3;
  double p = 0.75;
  double delta = 0.1;
  std::size_t gadget_size = 10;
  int gadget_girth = 5;
  std::uint64_t seed = 1;
};

struct Theorem2Report {
  Theorem2Params params;
  int h = 0;
  int chain_length = 0;          // L, gadget copies per tree edge
  std::size_t n1 = 0;            // vertices of the regular graph under H1
  std::size_t n1_hat = 0;        // degree-2 subdivision vertices (|M|)
  std::size_t trees = 0;
  std::size_t n2_hat = 0;        // tree leaves, degree d-1 inside H2
  std::size_t n2 = 0;            // degree-d vertices of H2
  std::size_t tree_vertices = 0; // internal tree vertices, roots included
  std::size_t gadget_vertices = 0;
  std::size_t total_vertices = 0;
  std::size_t total_edges = 0;
  std::optional<int> girth_h1;
  std::optional<int> girth_h2;
  std::optional<int> girth_gadget;
  InequalityCheck disconnect;    // p^{hL} n^{(1+a)/2} <= n^{-1/2}
  InequalityCheck subcritical;   // p^L < d^{-2}
  bool regular = false;

  nlohmann::json to_json() const;
};

struct Theorem2Build {
  Graph graph;
  Theorem2Report report;
};

/// Regular expander whose percolation has a second component of order n^alpha.
/// Region labels: H1 and SUBDIV (the small expander), TREE, GADGET, H2.
Theorem2Build theorem2_build(const Theorem2Params& params);

struct Theorem3Params {
  double p = 0.5;
  double eps = 0.5;
  std::size_t n_target = 1000000;
  std::uint64_t seed = 1;
};

struct Theorem3Report {
  Theorem3Params params;
  int d = 0;             // branching of the trees and degree of F0
  int h_n = 0;
  int alpha = 0;         // path length in the deep levels of T1
  int beta = 0;          // path length in the deep levels of T2 and in F
  int subdivided_levels = 0;
  std::size_t leaves = 0;  // N
  std::size_t t1_vertices = 0;
  std::size_t t2_vertices = 0;
  std::size_t f_vertices = 0;
  std::size_t total_vertices = 0;
  std::size_t total_edges = 0;
  std::size_t max_degree = 0;
  int t1_height = 0;
  int t2_height = 0;
  double diameter_bound = 0.0;  // (1 + 6 eps) log_{1/p} |V|

  nlohmann::json to_json() const;
};

struct Theorem3Build {
  Graph graph;
  Vertex root = 0;  // the designated vertex v (root of T1)
  Theorem3Report report;
};

/// Expander with a designated vertex whose cluster is long-range although no
/// component is of linear size. Region labels: T1, T2, F.
Theorem3Build theorem3_build(const Theorem3Params& params);

}  // namespace giantlab
