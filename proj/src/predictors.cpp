#include <algorithm>
#include <string>

#include "giantlab/errors.hpp"
#include "giantlab/percolation.hpp"

namespace giantlab {

namespace {

// Per-thread scratch for truncated searches. Stamps avoid clearing the
// visited array between queries.
class TruncatedSearch {
public:
  explicit TruncatedSearch(std::size_t n) : seen_(n, 0) {}

  // True when y reaches at least R vertices in the open graph without using
  // edge `banned`.
  bool reaches(const Graph& g, const EdgeMask& mask, Vertex y, EdgeId banned, int R) {
    if (R <= 1) return true;
    if (++stamp_ == 0) {
      std::fill(seen_.begin(), seen_.end(), 0);
      stamp_ = 1;
    }
    queue_.clear();
    queue_.push_back(y);
    seen_[y] = stamp_;
    const auto target = static_cast<std::size_t>(R);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const Vertex u = queue_[head];
      const auto nb = g.neighbors(u);
      const auto inc = g.incident_edges(u);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        const Vertex w = nb[i];
        if (inc[i] == banned || seen_[w] == stamp_ || !mask.open(inc[i])) continue;
        seen_[w] = stamp_;
        queue_.push_back(w);
        if (queue_.size() >= target) return true;
      }
    }
    return false;
  }

private:
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
  std::vector<Vertex> queue_;
};

}  // namespace

PredictorSets local_predictors(const Graph& g, const EdgeMask& mask, int R, const ComponentSummary& comps,
                               const CoreSummary& core, Exec exec, std::uint64_t budget) {
  if (!mask.belongs_to(g)) throw ParameterError("edge mask was sampled for a different graph");
  if (R < 1) throw ParameterError("R must be at least 1");
  const std::size_t n = g.num_vertices();
  const std::size_t m = g.num_edges();

  std::uint64_t work = 0;
  for (EdgeId e = 0; e < m; ++e) {
    if (!mask.open(e)) continue;
    const std::size_t c = comps.sizes[comps.rank[g.edge(e).first]];
    work += 2 * std::min<std::uint64_t>(c, static_cast<std::uint64_t>(R)) * std::max<std::size_t>(g.max_degree(), 1);
  }
  if (work > budget) {
    throw BudgetError("predictor search would scan " + std::to_string(work) + " adjacency entries (budget " +
                      std::to_string(budget) + "); lower R");
  }

  // forward[e]: A(u, v) for e = (u, v), i.e. v keeps R vertices without e.
  std::vector<std::uint8_t> forward(m, 0);
  std::vector<std::uint8_t> backward(m, 0);
  auto evaluate = [&](TruncatedSearch& search, EdgeId e) {
    if (!mask.open(e)) return;
    const auto [u, v] = g.edge(e);
    if (comps.sizes[comps.rank[u]] < static_cast<std::size_t>(R)) return;
    forward[e] = search.reaches(g, mask, v, e, R);
    backward[e] = search.reaches(g, mask, u, e, R);
  };

  const auto count = static_cast<std::ptrdiff_t>(m);
  if (exec == Exec::parallel) {
#pragma omp parallel
    {
      TruncatedSearch search(n);
#pragma omp for schedule(dynamic, 2048)
      for (std::ptrdiff_t e = 0; e < count; ++e) evaluate(search, static_cast<EdgeId>(e));
    }
  } else {
    TruncatedSearch search(n);
    for (std::ptrdiff_t e = 0; e < count; ++e) evaluate(search, static_cast<EdgeId>(e));
  }

  PredictorSets out;
  out.R = R;
  out.e1.assign(m, 0);
  out.e2.assign(m, 0);
  out.v1.assign(n, 0);
  out.v2.assign(n, 0);
  for (EdgeId e = 0; e < m; ++e) {
    const auto [u, v] = g.edge(e);
    out.e1[e] = forward[e] | backward[e];
    out.e2[e] = forward[e] & backward[e];
    if (forward[e]) out.v1[u] = 1;
    if (backward[e]) out.v1[v] = 1;
    if (out.e2[e]) out.v2[u] = out.v2[v] = 1;

    const bool open = mask.open(e);
    const bool giant_edge = open && comps.rank[u] == 0;
    const bool core_edge = giant_edge && core.in_core[u] && core.in_core[v];
    out.e1_count += out.e1[e];
    out.e2_count += out.e2[e];
    out.audit_e1 += (out.e1[e] != 0) != giant_edge;
    out.audit_e2 += (out.e2[e] != 0) != core_edge;
  }
  for (Vertex v = 0; v < n; ++v) {
    const bool giant = comps.rank[v] == 0;
    const bool giant_core = giant && core.in_core[v];
    out.v1_count += out.v1[v];
    out.v2_count += out.v2[v];
    out.audit_v1 += (out.v1[v] != 0) != giant;
    out.audit_v2 += (out.v2[v] != 0) != giant_core;
  }
  return out;
}

}  // namespace giantlab
