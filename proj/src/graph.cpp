#include "giantlab/graph.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "giantlab/errors.hpp"
#include "giantlab/rng.hpp"

namespace giantlab {

namespace {

constexpr std::array<std::string_view, 9> kRegionNames = {
    "NONE", "H1", "TREE", "GADGET", "H2", "T1", "T2", "F", "SUBDIV"};

constexpr std::string_view kMagic = "#giantlab-graph v1";

}  // namespace

std::string_view region_name(Region r) { return kRegionNames[static_cast<std::size_t>(r)]; }

std::optional<Region> parse_region(std::string_view tag) {
  for (std::size_t i = 1; i < kRegionNames.size(); ++i) {
    if (kRegionNames[i] == tag) return static_cast<Region>(i);
  }
  return std::nullopt;
}

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges, std::vector<Region> labels) {
  if (n > UINT32_MAX) {
    throw ParameterError("vertex count exceeds 32-bit range");
  }
  if (!labels.empty() && labels.size() != n) {
    throw ParameterError("label vector size does not match vertex count");
  }
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw ParameterError("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
    }
    if (u == v) {
      throw FormatError("self-loop at vertex " + std::to_string(u));
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  const auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw FormatError("duplicate edge " + std::to_string(dup->first) + " " + std::to_string(dup->second));
  }
  if (std::all_of(labels.begin(), labels.end(), [](Region r) { return r == Region::none; })) {
    labels.clear();
  }

  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.labels_ = std::move(labels);

  std::vector<std::size_t> deg(n + 1, 0);
  for (const auto& [u, v] : g.edges_) {
    ++deg[u];
    ++deg[v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.max_degree_ = std::max(g.max_degree_, deg[v]);
  }
  g.adj_.resize(2 * g.edges_.size());
  g.adj_edge_.resize(2 * g.edges_.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  std::uint64_t h = mix64(n);
  for (EdgeId e = 0; e < g.edges_.size(); ++e) {
    const auto [u, v] = g.edges_[e];
    g.adj_[cursor[u]] = v;
    g.adj_edge_[cursor[u]++] = e;
    g.adj_[cursor[v]] = u;
    g.adj_edge_[cursor[v]++] = e;
    h = mix64(h ^ ((static_cast<std::uint64_t>(u) << 32) | v));
  }
  g.fingerprint_ = h;
  return g;
}

std::optional<EdgeId> Graph::find_edge(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
  if (it == edges_.end() || *it != Edge{u, v}) return std::nullopt;
  return static_cast<EdgeId>(it - edges_.begin());
}

std::size_t Graph::count_label(Region r) const {
  if (labels_.empty()) return r == Region::none ? n_ : 0;
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), r));
}

// ---------------------------------------------------------------------------

void write_graph(const Graph& g, std::ostream& out, const std::vector<std::string>& comments) {
  std::string buf;
  buf.reserve(32 + 16 * g.num_edges());
  buf += kMagic;
  buf += '\n';
  for (const auto& c : comments) {
    buf += "# ";
    buf += c;
    buf += '\n';
  }
  buf += std::to_string(g.num_vertices()) + ' ' + std::to_string(g.num_edges()) + '\n';
  for (const auto& [u, v] : g.edges()) {
    buf += std::to_string(u);
    buf += ' ';
    buf += std::to_string(v);
    buf += '\n';
  }
  if (g.has_labels()) {
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      const Region r = g.label(v);
      if (r == Region::none) continue;
      buf += "L " + std::to_string(v) + ' ';
      buf += region_name(r);
      buf += '\n';
    }
  }
  out << buf;
}

void write_graph(const Graph& g, const std::string& path, const std::vector<std::string>& comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_graph(g, out, comments);
  if (!out) throw IoError("failed writing " + path);
}

std::string graph_to_string(const Graph& g) {
  std::ostringstream out;
  write_graph(g, out);
  return out.str();
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t parse_uint(std::string_view tok, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw FormatError("expected a non-negative integer, got '" + std::string(tok) + "'", line_no);
  }
  return value;
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw FormatError("empty graph file", 1);
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kMagic) throw FormatError("missing '#giantlab-graph v1' header", line_no);

  bool have_counts = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '#') continue;
    have_counts = true;
    break;
  }
  if (!have_counts) throw FormatError("missing 'n m' line", line_no + 1);
  const std::size_t counts_line = line_no;
  auto head = split_ws(line);
  if (head.size() != 2) throw FormatError("expected 'n m'", line_no);
  const std::uint64_t n = parse_uint(head[0], line_no);
  const std::uint64_t m = parse_uint(head[1], line_no);
  if (n > UINT32_MAX) throw FormatError("vertex count too large", line_no);

  struct Entry {
    Edge e;
    std::size_t line;
  };
  std::vector<Entry> entries;
  entries.reserve(m);
  std::vector<Region> labels;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '#') continue;
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "L") {
      if (tok.size() != 3) throw FormatError("expected 'L v TAG'", line_no);
      const auto v = parse_uint(tok[1], line_no);
      if (v >= n) throw FormatError("label vertex out of range", line_no);
      const auto r = parse_region(tok[2]);
      if (!r) throw FormatError("unknown region tag '" + std::string(tok[2]) + "'", line_no);
      if (labels.empty()) labels.assign(n, Region::none);
      labels[v] = *r;
      continue;
    }
    if (tok.size() != 2) throw FormatError("expected 'u v'", line_no);
    if (!labels.empty()) throw FormatError("edge line after label lines", line_no);
    auto u = parse_uint(tok[0], line_no);
    auto v = parse_uint(tok[1], line_no);
    if (u >= n || v >= n) throw FormatError("edge endpoint out of range", line_no);
    if (u == v) throw FormatError("self-loop at vertex " + std::to_string(u), line_no);
    if (u > v) std::swap(u, v);
    entries.push_back({{static_cast<Vertex>(u), static_cast<Vertex>(v)}, line_no});
  }
  if (entries.size() != m) {
    throw FormatError("header declares " + std::to_string(m) + " edges but file has " +
                          std::to_string(entries.size()),
                      counts_line);
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.e < b.e; });
  std::vector<Edge> edges;
  edges.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0 && entries[i].e == entries[i - 1].e) {
      throw FormatError("duplicate edge " + std::to_string(entries[i].e.first) + " " +
                            std::to_string(entries[i].e.second),
                        std::max(entries[i].line, entries[i - 1].line));
    }
    edges.push_back(entries[i].e);
  }
  return Graph::from_edges(n, std::move(edges), std::move(labels));
}

Graph read_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return parse_graph(in);
}

}  // namespace giantlab
