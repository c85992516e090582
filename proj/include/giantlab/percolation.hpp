#pragma once

// Bond percolation samples and the observables measured on them: components,
// the 2-core of every component, bridges of the giant 2-core, and the
// radius-R local predictor sets for giant and 2-core membership.

#include <cstdint>
#include <limits>
#include <vector>

#include "giantlab/graph.hpp"

namespace giantlab {

/// Kernels that have an OpenMP implementation take an Exec; `serial` runs the
/// plain reference loop. Both produce identical results.
enum class Exec { serial, parallel };

/// One open/closed bit per edge, in Graph edge order, tied to the graph it
/// was drawn for by fingerprint.
class EdgeMask {
public:
  EdgeMask() = default;
  /// All edges closed.
  EdgeMask(const Graph& g, double p, std::uint64_t seed);

  static EdgeMask all_open(const Graph& g);
  static EdgeMask from_bits(const Graph& g, const std::vector<bool>& open);

  bool open(EdgeId e) const { return (words_[e >> 6] >> (e & 63)) & 1U; }
  void set(EdgeId e, bool value);

  std::size_t size() const noexcept { return m_; }
  std::size_t count_open() const;
  double p() const noexcept { return p_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t graph_fingerprint() const noexcept { return fingerprint_; }
  bool belongs_to(const Graph& g) const noexcept {
    return fingerprint_ == g.fingerprint() && m_ == g.num_edges();
  }

  std::vector<std::uint64_t>& words() noexcept { return words_; }
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const EdgeMask& a, const EdgeMask& b) {
    return a.m_ == b.m_ && a.fingerprint_ == b.fingerprint_ && a.words_ == b.words_;
  }

private:
  std::size_t m_ = 0;
  double p_ = 0.0;
  std::uint64_t seed_ = 0;
  std::uint64_t fingerprint_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Edge e is open iff edge_uniform(seed, e) < p. Throws ParameterError
/// unless 0 <= p <= 1.
EdgeMask sample(const Graph& g, double p, std::uint64_t seed, Exec exec = Exec::serial);

struct ComponentSummary {
  /// Sizes in decreasing order; equal sizes ordered by smallest vertex.
  std::vector<std::size_t> sizes;
  /// Position of each vertex's component in `sizes`; 0 is the giant.
  std::vector<std::uint32_t> rank;
  std::size_t giant_size = 0;
  std::size_t second_size = 0;
  std::size_t giant_edges = 0;
  std::int64_t giant_excess = 0;
  /// degree_hist[k] = giant vertices with open degree k, k = 0..max_degree.
  std::vector<std::size_t> degree_hist;

  bool in_giant(Vertex v) const { return rank[v] == 0; }
};

struct CoreSummary {
  /// 1 when the vertex survives peeling of its component.
  std::vector<std::uint8_t> in_core;
  std::size_t giant_core_vertices = 0;
  std::size_t giant_core_edges = 0;
  std::int64_t giant_core_excess = 0;
  /// core_degree_hist[k] = giant-core vertices with k core neighbours.
  std::vector<std::size_t> core_degree_hist;
  std::size_t bridges = 0;
  /// Total 2-core vertices over all components other than the giant.
  std::size_t other_core_vertices = 0;
};

/// Union-find over open edges. Throws ParameterError if the mask was drawn
/// for a different graph.
ComponentSummary components(const Graph& g, const EdgeMask& mask);

/// Peels open-degree <= 1 vertices to the fixpoint and counts bridges of the
/// giant 2-core (iterative low-link).
CoreSummary two_core(const Graph& g, const EdgeMask& mask, const ComponentSummary& comps);
CoreSummary two_core(const Graph& g, const EdgeMask& mask);

/// Work cap for local_predictors, in adjacency entries scanned.
inline constexpr std::uint64_t kDefaultPredictorBudget = std::uint64_t{1} << 36;

struct PredictorSets {
  int R = 0;
  std::vector<std::uint8_t> e1, e2;  // per edge
  std::vector<std::uint8_t> v1, v2;  // per vertex
  std::size_t e1_count = 0, e2_count = 0, v1_count = 0, v2_count = 0;
  // Symmetric differences against the giant and its 2-core.
  std::size_t audit_e1 = 0;
  std::size_t audit_v1 = 0;
  std::size_t audit_e2 = 0;
  std::size_t audit_v2 = 0;
};

/// For an open edge xy, A(x,y) holds when y still reaches R vertices after
/// xy is removed; checked by a BFS that stops at R vertices.
///   E1: open edges with A(x,y) or A(y,x)   V1: x with A(x,y) for an open xy
///   E2: open edges with A(x,y) and A(y,x)  V2: endpoints of E2
/// Throws ParameterError for R < 1 and BudgetError when the worst-case scan
/// count exceeds `budget`.
PredictorSets local_predictors(const Graph& g, const EdgeMask& mask, int R, const ComponentSummary& comps,
                               const CoreSummary& core, Exec exec = Exec::serial,
                               std::uint64_t budget = kDefaultPredictorBudget);

struct ClusterDiameter {
  int eccentricity = 0;
  std::size_t size = 0;
};

/// Exact eccentricity of v inside its open cluster.
ClusterDiameter component_diameter(const Graph& g, const EdgeMask& mask, Vertex v);

/// Number of simple paths with `ell` edges in the open giant, each counted
/// once (not per direction). Enumerates, so intended for small ell.
std::uint64_t count_open_paths(const Graph& g, const EdgeMask& mask, const ComponentSummary& comps, int ell);

}  // namespace giantlab
