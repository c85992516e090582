#include "giantlab/diagnostics.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numeric>

#include "giantlab/rng.hpp"

namespace giantlab {

namespace {

// Vertices of the 2-core (every cycle lives there).
std::vector<std::uint8_t> core_vertices(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint8_t> alive(n, 1);
  std::vector<std::size_t> deg(n);
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] <= 1) stack.push_back(v);
  }
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (Vertex w : g.neighbors(v)) {
      if (alive[w] && --deg[w] == 1) stack.push_back(w);
    }
  }
  return alive;
}

// Number of eigenvalues of the symmetric tridiagonal (a, b) below x.
int sturm_count(const std::vector<double>& a, const std::vector<double>& b, double x) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double off = i == 0 ? 0.0 : b[i - 1] * b[i - 1];
    q = (a[i] - x) - (i == 0 ? 0.0 : off / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

double tridiagonal_min_eigenvalue(const std::vector<double>& a, const std::vector<double>& b) {
  double lo = a[0];
  double hi = a[0];
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double r = (i > 0 ? std::abs(b[i - 1]) : 0.0) + (i + 1 < a.size() ? std::abs(b[i]) : 0.0);
    lo = std::min(lo, a[i] - r);
    hi = std::max(hi, a[i] + r);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(a, b, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Inverse iteration with a shift just below theta; T - shift*I is then
// positive definite and the Thomas algorithm needs no pivoting.
std::vector<double> tridiagonal_eigenvector(const std::vector<double>& a, const std::vector<double>& b,
                                            double theta) {
  const std::size_t k = a.size();
  const double shift = theta - 1e-10 * (1.0 + std::abs(theta));
  std::vector<double> y(k, 1.0);
  std::vector<double> c(k), d(k);
  for (int it = 0; it < 6; ++it) {
    // Forward sweep.
    double denom = a[0] - shift;
    c[0] = k > 1 ? b[0] / denom : 0.0;
    d[0] = y[0] / denom;
    for (std::size_t i = 1; i < k; ++i) {
      denom = (a[i] - shift) - b[i - 1] * c[i - 1];
      c[i] = i + 1 < k ? b[i] / denom : 0.0;
      d[i] = (y[i] - b[i - 1] * d[i - 1]) / denom;
    }
    y[k - 1] = d[k - 1];
    for (std::size_t i = k - 1; i-- > 0;) y[i] = d[i] - c[i] * y[i + 1];
    double norm = 0.0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : y) v /= norm;
  }
  return y;
}

void laplacian_apply(const Graph& g, const std::vector<double>& x, std::vector<double>& y) {
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    double s = static_cast<double>(g.degree(u)) * x[u];
    for (Vertex w : g.neighbors(u)) s -= x[w];
    y[u] = s;
  }
}

void remove_mean(std::vector<double>& x) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  for (double& v : x) v -= mean;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

std::optional<int> girth(const Graph& g) {
  const std::size_t n = g.num_vertices();
  const auto core = core_vertices(g);
  int best = INT_MAX;
  std::vector<std::int32_t> dist(n, -1);
  std::vector<std::int64_t> via(n, -1);
  std::vector<Vertex> queue;
  queue.reserve(n);
  for (Vertex s = 0; s < n; ++s) {
    if (!core[s]) continue;
    queue.clear();
    queue.push_back(s);
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      if (2 * dist[u] + 1 >= best) break;
      const auto nb = g.neighbors(u);
      const auto inc = g.incident_edges(u);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        const Vertex w = nb[i];
        if (!core[w] || static_cast<std::int64_t>(inc[i]) == via[u]) continue;
        if (dist[w] == -1) {
          dist[w] = dist[u] + 1;
          via[w] = inc[i];
          queue.push_back(w);
        } else {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
    for (Vertex v : queue) {
      dist[v] = -1;
      via[v] = -1;
    }
  }
  if (best == INT_MAX) return std::nullopt;
  return best;
}

std::vector<std::int32_t> bfs_distances(const Graph& g, Vertex src) {
  std::vector<std::int32_t> dist(g.num_vertices(), -1);
  std::vector<Vertex> queue{src};
  dist[src] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == -1) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  if (g.num_vertices() == 0) return true;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](std::int32_t x) { return x < 0; });
}

int diameter_lower_bound(const Graph& g, int sweeps, Vertex start) {
  if (g.num_vertices() == 0) return 0;
  int best = 0;
  Vertex from = start;
  for (int s = 0; s < std::max(sweeps, 1); ++s) {
    const auto dist = bfs_distances(g, from);
    Vertex far = from;
    for (Vertex v = 0; v < dist.size(); ++v) {
      if (dist[v] > dist[far]) far = v;
    }
    if (dist[far] <= best && s > 0) break;
    best = std::max(best, dist[far]);
    from = far;
  }
  return best;
}

SpectralEstimate laplacian_lambda2(const Graph& g, bool want_vector, double rel_tol, int max_steps) {
  SpectralEstimate out;
  const std::size_t n = g.num_vertices();
  if (n < 2 || !is_connected(g)) {
    if (want_vector) out.fiedler.assign(n, 0.0);
    return out;
  }
  const int k_max = static_cast<int>(std::min<std::size_t>(max_steps, n - 1));

  Rng rng(0x5eed5eedULL);
  std::vector<double> q(n);
  for (double& v : q) v = rng.uniform() - 0.5;
  remove_mean(q);
  double norm = std::sqrt(dot(q, q));
  for (double& v : q) v /= norm;

  std::vector<std::vector<double>> basis;
  if (want_vector) basis.push_back(q);
  std::vector<double> q_prev(n, 0.0);
  std::vector<double> w(n);
  std::vector<double> alpha;
  std::vector<double> beta;
  double beta_prev = 0.0;
  double theta_prev = 0.0;
  double theta = 0.0;

  for (int j = 0; j < k_max; ++j) {
    laplacian_apply(g, q, w);
    const double a = dot(w, q);
    for (std::size_t i = 0; i < n; ++i) w[i] -= a * q[i] + beta_prev * q_prev[i];
    remove_mean(w);
    if (want_vector) {
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) {
          const double c = dot(w, b);
          for (std::size_t i = 0; i < n; ++i) w[i] -= c * b[i];
        }
      }
    }
    alpha.push_back(a);
    out.iterations = j + 1;
    const double b = std::sqrt(dot(w, w));

    const bool last = j + 1 == k_max || b < 1e-10 * (1.0 + std::abs(a));
    if (last || (j + 1) % 5 == 0) {
      theta = tridiagonal_min_eigenvalue(alpha, beta);
      if (last) break;
      if (j >= 9 && std::abs(theta - theta_prev) <= rel_tol * std::abs(theta)) break;
      theta_prev = theta;
    }
    beta.push_back(b);
    beta_prev = b;
    q_prev.swap(q);
    for (std::size_t i = 0; i < n; ++i) q[i] = w[i] / b;
    if (want_vector) basis.push_back(q);
  }
  if (beta.size() >= alpha.size()) beta.resize(alpha.size() - 1);
  theta = tridiagonal_min_eigenvalue(alpha, beta);
  out.lambda2 = theta;

  if (want_vector) {
    const auto y = tridiagonal_eigenvector(alpha, beta, theta);
    out.fiedler.assign(n, 0.0);
    for (std::size_t j = 0; j < y.size(); ++j) {
      for (std::size_t i = 0; i < n; ++i) out.fiedler[i] += y[j] * basis[j][i];
    }
    norm = std::sqrt(dot(out.fiedler, out.fiedler));
    if (norm > 0.0) {
      for (double& v : out.fiedler) v /= norm;
    }
  }
  return out;
}

double cheeger_lower_bound(const Graph& g) {
  if (!is_connected(g)) return 0.0;
  return 0.5 * laplacian_lambda2(g).lambda2;
}

}  // namespace giantlab
