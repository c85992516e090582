#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace giantlab {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Construction region tags carried as optional vertex labels.
enum class Region : std::uint8_t { none = 0, h1, tree, gadget, h2, t1, t2, f, subdiv };

std::string_view region_name(Region r);
std::optional<Region> parse_region(std::string_view tag);

/// Immutable undirected simple graph. Edges are stored sorted with u < v and
/// identified by their index in that order; the adjacency is a CSR view that
/// also records the edge id of every incidence.
class Graph {
public:
  Graph() = default;

  /// Validates and normalizes: each pair is reoriented to u < v and the list
  /// is sorted. Throws FormatError on self-loops or duplicates and
  /// ParameterError on out-of-range endpoints or label-size mismatch.
  static Graph from_edges(std::size_t n, std::vector<Edge> edges, std::vector<Region> labels = {});

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  /// Edge ids aligned with neighbors(v).
  std::span<const EdgeId> incident_edges(Vertex v) const {
    return {adj_edge_.data() + offsets_[v], adj_edge_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept { return max_degree_; }

  /// Id of edge {u, v}, if present.
  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;

  bool has_labels() const noexcept { return !labels_.empty(); }
  /// Region of v; Region::none when the graph carries no labels.
  Region label(Vertex v) const { return labels_.empty() ? Region::none : labels_[v]; }
  const std::vector<Region>& labels() const noexcept { return labels_; }
  std::size_t count_label(Region r) const;

  /// Hash of (n, edges); used to tie percolation samples to their graph.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.labels_ == b.labels_;
  }

private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adj_;
  std::vector<EdgeId> adj_edge_;
  std::vector<Region> labels_;
  std::size_t max_degree_ = 0;
  std::uint64_t fingerprint_ = 0;
};

// Text format, ASCII:
//   #giantlab-graph v1
//   # free-form comment lines (optional, skipped by the parser)
//   n m
//   u v            (m lines, 0 <= u < v < n, lexicographic order)
//   L v TAG        (optional, one per labelled vertex, ascending v)
// Comments are written as "# " lines right after the magic line.
void write_graph(const Graph& g, std::ostream& out, const std::vector<std::string>& comments = {});
void write_graph(const Graph& g, const std::string& path, const std::vector<std::string>& comments = {});
std::string graph_to_string(const Graph& g);

Graph parse_graph(std::istream& in);
Graph read_graph(const std::string& path);

}  // namespace giantlab
