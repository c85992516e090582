#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "giantlab/graph.hpp"

namespace giantlab {

/// Length of the shortest cycle, or nullopt for a forest. Exact: a BFS from
/// every vertex, each truncated once it cannot improve the current best.
std::optional<int> girth(const Graph& g);

bool is_connected(const Graph& g);

/// Hop distances from src; -1 for unreachable vertices.
std::vector<std::int32_t> bfs_distances(const Graph& g, Vertex src);

/// Multi-sweep BFS lower bound on the diameter of the component of start.
int diameter_lower_bound(const Graph& g, int sweeps = 4, Vertex start = 0);

struct SpectralEstimate {
  double lambda2 = 0.0;           // second-smallest Laplacian eigenvalue
  std::vector<double> fiedler;    // unit eigenvector estimate, when requested
  int iterations = 0;
};

/// Lanczos estimate of the algebraic connectivity on the complement of the
/// constant vector. Stops when the smallest Ritz value moves by less than
/// rel_tol (relative) between checks, or the Krylov space is exhausted.
SpectralEstimate laplacian_lambda2(const Graph& g, bool want_vector = false,
                                   double rel_tol = 1e-6, int max_steps = 3000);

/// lambda2 / 2, the spectral lower bound on edge expansion of a regular
/// graph; 0 for disconnected graphs.
double cheeger_lower_bound(const Graph& g);

}  // namespace giantlab
