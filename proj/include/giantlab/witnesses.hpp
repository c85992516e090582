#pragma once

// Heuristic structure witnesses on the percolated giant: long paths, small
// balanced separators, and clique minors. Each search returns an explicit
// witness that the matching verify_* function checks independently; none of
// them claims optimality.

#include <cstddef>
#include <vector>

#include "giantlab/graph.hpp"
#include "giantlab/percolation.hpp"

namespace giantlab {

/// Long simple open path found by repeated DFS sweeps, each started from the
/// far end of the best path so far. Starts in the giant.
std::vector<Vertex> longest_path_lb(const Graph& g, const EdgeMask& mask, const ComponentSummary& comps,
                                    int sweeps = 6);

bool is_open_simple_path(const Graph& g, const EdgeMask& mask, const std::vector<Vertex>& path);

struct Subgraph {
  Graph graph;
  std::vector<Vertex> original;  // original[i] is the source vertex of vertex i
};

/// Open giant as a standalone graph, vertices relabelled in increasing order.
Subgraph giant_subgraph(const Graph& g, const EdgeMask& mask, const ComponentSummary& comps);

struct Separator {
  std::vector<Vertex> separator;
  std::vector<Vertex> a;
  std::vector<Vertex> b;
};

/// Smallest separator seen while sweeping prefixes of the Fiedler order,
/// using both the inner and the outer vertex boundary of each prefix, subject
/// to |A|, |B| <= 2n/3. Throws ParameterError on disconnected input.
Separator separator_search(const Graph& g, int lanczos_steps = 300);

/// Partition of V, no A-B edge, and both sides within the 2n/3 balance.
bool verify_separator(const Graph& g, const Separator& s);

struct MinorWitness {
  std::vector<std::vector<Vertex>> branch_sets;
  std::size_t order() const noexcept { return branch_sets.size(); }
};

/// Clique minor from BFS-ball branch sets of sizes 1, 2, 4, ... up to about
/// 2*sqrt(n): a greedy clique in the quotient graph, then extra branch sets
/// grown along connecting paths through unused vertices.
MinorWitness minor_order_lb(const Graph& g);

/// Branch sets nonempty, disjoint, each connected, and pairwise adjacent.
bool verify_minor(const Graph& g, const MinorWitness& w);

}  // namespace giantlab
