#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "giantlab/diagnostics.hpp"
#include "giantlab/errors.hpp"
#include "giantlab/generators.hpp"
#include "giantlab/graph.hpp"
#include "oracles.hpp"

using namespace giantlab;

namespace {

Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e);
}

Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

bool all_degrees(const Graph& g, std::size_t d) {
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) != d) return false;
  return true;
}

}  // namespace

TEST_CASE("graph normalizes and indexes edges") {
  const Graph g = Graph::from_edges(4, {{2, 1}, {0, 3}, {1, 0}});
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}});
  CHECK(g.degree(0) == 2);
  CHECK(g.max_degree() == 2);
  REQUIRE(g.find_edge(3, 0).has_value());
  CHECK(*g.find_edge(3, 0) == 1);
  CHECK_FALSE(g.find_edge(2, 3).has_value());
  for (Vertex v = 0; v < 4; ++v) {
    const auto nb = g.neighbors(v);
    const auto ids = g.incident_edges(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const Edge& e = g.edge(ids[i]);
      CHECK(((e.first == v && e.second == nb[i]) || (e.second == v && e.first == nb[i])));
    }
  }
}

TEST_CASE("graph rejects loops, duplicates and bad endpoints") {
  CHECK_THROWS_AS(Graph::from_edges(3, {{1, 1}}), FormatError);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), FormatError);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), ParameterError);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}}, {Region::h1}), ParameterError);
}

TEST_CASE("random_regular") {
  const Graph g = random_regular(10, 3, 1);
  CHECK(g.num_edges() == 15);
  CHECK(all_degrees(g, 3));
  CHECK_THROWS_AS(random_regular(7, 3, 1), ParameterError);
  CHECK_THROWS_AS(random_regular(3, 3, 1), ParameterError);
  CHECK(random_regular(1000, 4, 9) == random_regular(1000, 4, 9));
  CHECK_FALSE(random_regular(1000, 4, 9) == random_regular(1000, 4, 10));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(all_degrees(random_regular(50 + 2 * seed, 5, seed), 5));
  }
}

TEST_CASE("random_graph_with_degrees realizes the sequence") {
  std::vector<int> deg(200, 3);
  for (std::size_t i = 0; i < 40; ++i) deg[i] = 2;
  const Graph g = random_graph_with_degrees(deg, 5);
  for (Vertex v = 0; v < 200; ++v) CHECK(g.degree(v) == static_cast<std::size_t>(deg[v]));
  std::vector<int> odd{1, 1, 1};
  CHECK_THROWS_AS(random_graph_with_degrees(odd, 1), ParameterError);
}

TEST_CASE("moore bound") {
  CHECK(moore_bound(3, 3) == 4);
  CHECK(moore_bound(3, 5) == 10);
  CHECK(moore_bound(3, 6) == 14);
  CHECK(moore_bound(3, 8) == 30);
  CHECK(moore_bound(4, 5) == 17);
  CHECK(moore_bound(7, 5) == 50);
}

TEST_CASE("high girth regular") {
  const Graph k4 = high_girth_regular(4, 3, 3);
  CHECK(k4 == complete(4));
  CHECK(girth(k4) == 3);

  const Graph pet = high_girth_regular(10, 3, 5);
  CHECK(all_degrees(pet, 3));
  REQUIRE(girth(pet).has_value());
  CHECK(*girth(pet) >= 5);

  for (auto [m, d, r] : {std::tuple{14, 3, 6}, {20, 3, 5}, {24, 4, 5}, {40, 3, 6}}) {
    const Graph g = high_girth_regular(m, d, r, 3);
    CHECK(all_degrees(g, d));
    CHECK(*girth(g) >= r);
  }

  try {
    high_girth_regular(9, 3, 5);
    FAIL("expected an infeasibility error");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("10") != std::string::npos);
  }
}

TEST_CASE("girth examples") {
  CHECK(girth(cycle(5)) == 5);
  CHECK(girth(complete(4)) == 3);
  CHECK_FALSE(girth(path(10)).has_value());
  const SubdividedTree t = build_t_tree(3, 3, 0, 1);
  CHECK_FALSE(girth(t.graph).has_value());
  CHECK_FALSE(girth(Graph::from_edges(3, {})).has_value());
}

TEST_CASE("girth matches exhaustive cycle search") {
  CHECK(oracle::girth_mismatches([](const Graph& g) { return girth(g); }) == 0);
  CHECK(oracle::brute_girth(cycle(7)) == 7);
  CHECK(oracle::brute_girth(complete(5)) == 3);
  CHECK_FALSE(oracle::brute_girth(path(6)).has_value());
}

TEST_CASE("subdivide") {
  const Graph tri = complete(3);
  const Graph c6 = subdivide(tri, tri.edges(), 2);
  CHECK(c6.num_vertices() == 6);
  CHECK(all_degrees(c6, 2));
  CHECK(is_connected(c6));
  CHECK(c6.count_label(Region::subdiv) == 3);

  const Graph c12 = subdivide(tri, tri.edges(), 4);
  CHECK(girth(c12) == 12);

  const Graph g = random_regular(30, 3, 4);
  std::vector<Edge> some(g.edges().begin(), g.edges().begin() + 7);
  CHECK(subdivide(g, some, 1) == g);

  const Graph s = subdivide(g, some, 3);
  CHECK(s.num_vertices() == 30 + 14);
  CHECK(s.num_edges() == g.num_edges() + 14);
  for (Vertex v = 0; v < 30; ++v) CHECK(s.degree(v) == 3);
  for (Vertex v = 30; v < s.num_vertices(); ++v) CHECK(s.degree(v) == 2);

  const Graph full = subdivide(g, g.edges(), 3);
  CHECK(*girth(full) == 3 * *girth(g));

  CHECK_THROWS_AS(subdivide(path(3), std::vector<Edge>{{0, 2}}, 2), ParameterError);
  CHECK_THROWS_AS(subdivide(tri, tri.edges(), 0), ParameterError);
}

TEST_CASE("subdivided trees") {
  const auto plain = build_t_tree(2, 2, 0, 5);
  CHECK(plain.graph.num_vertices() == 7);
  CHECK(plain.root == 0);
  CHECK(plain.leaves.size() == 4);

  const auto sub = build_t_tree(2, 2, 1, 2);
  CHECK(sub.graph.num_vertices() == 11);
  CHECK(sub.leaves.size() == 4);
  for (Vertex leaf : sub.leaves) {
    CHECK(sub.graph.degree(leaf) == 1);
    CHECK(bfs_distances(sub.graph, 0)[leaf] == 1 + 2);
  }

  CHECK(build_t_tree(3, 4, 2, 1).graph == build_t_tree(3, 4, 0, 1).graph);
  CHECK(build_t_tree(3, 4, 4, 1).graph == build_t_tree(3, 4, 0, 7).graph);

  const auto deep = build_t_tree(3, 4, 2, 5);
  const auto dist = bfs_distances(deep.graph, deep.root);
  for (Vertex leaf : deep.leaves) CHECK(dist[leaf] == 2 + 2 * 5);
  CHECK(deep.leaves.size() == 81);

  CHECK_THROWS_AS(build_t_tree(1, 2, 0, 1), ParameterError);
  CHECK_THROWS_AS(build_t_tree(2, 2, 3, 1), ParameterError);
  CHECK_THROWS_AS(build_t_tree(2, 2, 1, 0), ParameterError);
}

TEST_CASE("theorem2 construction at n = 10^4") {
  Theorem2Params prm;
  prm.n_target = 10000;
  prm.alpha = 0.5;
  prm.d = 3;
  prm.p = 0.75;
  const auto [g, rep] = theorem2_build(prm);
  CHECK(rep.h == 4);
  CHECK(rep.chain_length == 13);
  CHECK(rep.disconnect.lhs == doctest::Approx(std::pow(0.75, 52) * 1000.0).epsilon(1e-9));
  CHECK(rep.disconnect.lhs == doctest::Approx(3.2e-4).epsilon(0.05));
  CHECK(rep.disconnect.rhs == doctest::Approx(0.01));
  CHECK(rep.disconnect.pass);
  CHECK(rep.subcritical.pass);
  CHECK(rep.regular);
  CHECK(all_degrees(g, 3));

  CHECK(rep.n1 == 100);
  CHECK(rep.n1_hat == 10);
  CHECK(rep.trees == rep.n1_hat * (prm.d - 2));
  CHECK(rep.n2_hat == rep.n1_hat * (prm.d - 2) * static_cast<std::size_t>(std::pow(prm.d - 1, rep.h)));

  CHECK(g.count_label(Region::h1) == rep.n1);
  CHECK(g.count_label(Region::subdiv) == rep.n1_hat);
  CHECK(g.count_label(Region::tree) == rep.tree_vertices);
  CHECK(g.count_label(Region::gadget) == rep.gadget_vertices);
  CHECK(g.count_label(Region::h2) == rep.n2 + rep.n2_hat);
  CHECK(g.num_vertices() == rep.total_vertices);
  CHECK(g.num_edges() == rep.total_edges);
  CHECK(rep.n1 + rep.n1_hat + rep.tree_vertices + rep.n2_hat + rep.n2 == prm.n_target);

  // Each tree edge carries L gadgets of m vertices.
  const std::size_t tree_edges = rep.tree_vertices - rep.trees + rep.n2_hat;
  CHECK(rep.gadget_vertices == tree_edges * rep.chain_length * prm.gadget_size);
  CHECK(is_connected(g));

  const auto again = theorem2_build(prm);
  CHECK(again.graph == g);
  CHECK(graph_to_string(again.graph) == graph_to_string(g));

  const auto j = rep.to_json();
  CHECK(j.at("h") == 4);
  CHECK(j.at("L") == 13);
  CHECK(j.at("check_disconnect").at("pass") == true);
}

TEST_CASE("theorem2 parameter errors") {
  Theorem2Params prm;
  prm.p = 0.4;
  CHECK_THROWS_AS(theorem2_build(prm), ParameterError);
  prm = {};
  prm.alpha = 1.0;
  CHECK_THROWS_AS(theorem2_build(prm), ParameterError);
  prm = {};
  prm.d = 2;
  CHECK_THROWS_AS(theorem2_build(prm), ParameterError);
  prm = {};
  prm.gadget_size = 9;
  CHECK_THROWS_AS(theorem2_build(prm), ParameterError);
}

TEST_CASE("theorem3 construction at n = 10^6") {
  Theorem3Params prm;
  prm.p = 0.5;
  prm.eps = 0.5;
  prm.n_target = 1000000;
  const auto b = theorem3_build(prm);
  const auto& rep = b.report;
  CHECK(rep.d == 16);
  CHECK(rep.h_n == 4);
  CHECK(rep.alpha == 8);
  CHECK(rep.beta == 8);
  CHECK(rep.subdivided_levels == 2);
  CHECK(rep.leaves == 65536);
  CHECK(prm.n_target / rep.d < rep.leaves);
  CHECK(rep.leaves <= prm.n_target);
  CHECK(b.graph.max_degree() == 18);
  CHECK(rep.max_degree == 18);
  CHECK(b.root == 0);
  CHECK(b.graph.num_vertices() == rep.total_vertices);
  CHECK(b.graph.count_label(Region::t1) == rep.t1_vertices);
  CHECK(b.graph.count_label(Region::t2) == rep.t2_vertices);
  CHECK(b.graph.count_label(Region::f) == rep.f_vertices);

  // The degree-18 vertices are exactly the N partner vertices.
  std::size_t top = 0;
  for (Vertex v = 0; v < b.graph.num_vertices(); ++v) top += b.graph.degree(v) == 18;
  CHECK(top == rep.leaves);
}

TEST_CASE("theorem3 small build is deterministic and has the tree heights") {
  Theorem3Params prm;
  prm.p = 0.5;
  prm.eps = 0.5;
  prm.n_target = 4096;
  const auto a = theorem3_build(prm);
  const auto b = theorem3_build(prm);
  CHECK(a.graph == b.graph);
  CHECK(a.report.h_n == 3);
  const auto dist = bfs_distances(a.graph, a.root);
  int deepest_t1 = 0;
  for (Vertex v = 0; v < a.graph.num_vertices(); ++v) {
    if (a.graph.label(v) == Region::t1) deepest_t1 = std::max(deepest_t1, dist[v]);
  }
  CHECK(deepest_t1 == a.report.t1_height);
  CHECK(is_connected(a.graph));

  prm.n_target = 100;
  CHECK_THROWS_AS(theorem3_build(prm), ParameterError);
}

TEST_CASE("laplacian spectrum of small graphs") {
  CHECK(laplacian_lambda2(complete(4)).lambda2 == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(cheeger_lower_bound(complete(4)) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(cheeger_lower_bound(cycle(4)) == doctest::Approx(1.0).epsilon(1e-6));
  const Graph two_triangles = Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  CHECK(cheeger_lower_bound(two_triangles) == 0.0);

  for (std::size_t n : {5, 17, 100, 1000}) {
    const double expect_cycle = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi / static_cast<double>(n));
    const double expect_path = 2.0 - 2.0 * std::cos(std::numbers::pi / static_cast<double>(n));
    CHECK(laplacian_lambda2(cycle(n)).lambda2 == doctest::Approx(expect_cycle).epsilon(1e-5));
    CHECK(laplacian_lambda2(path(n)).lambda2 == doctest::Approx(expect_path).epsilon(1e-5));
  }
}

TEST_CASE("fiedler vector is an eigenvector") {
  const Graph g = random_regular(2000, 3, 11);
  const auto est = laplacian_lambda2(g, true);
  REQUIRE(est.fiedler.size() == g.num_vertices());
  double norm = 0.0, mean = 0.0, resid = 0.0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    double lx = static_cast<double>(g.degree(v)) * est.fiedler[v];
    for (Vertex w : g.neighbors(v)) lx -= est.fiedler[w];
    resid += (lx - est.lambda2 * est.fiedler[v]) * (lx - est.lambda2 * est.fiedler[v]);
    norm += est.fiedler[v] * est.fiedler[v];
    mean += est.fiedler[v];
  }
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(mean) < 1e-6);
  CHECK(std::sqrt(resid) < 1e-3);
}

TEST_CASE("random cubic graphs are expanders") {
  const Graph big = random_regular(100000, 3, 7);
  const double h = cheeger_lower_bound(big);
  MESSAGE("cheeger bound at n=1e5: " << h);
  CHECK(h >= 0.05);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(cheeger_lower_bound(random_regular(10000, 3, seed)) >= 0.05);
  }
}

TEST_CASE("bfs and diameter helpers") {
  const auto d = bfs_distances(path(6), 0);
  CHECK(d == std::vector<std::int32_t>{0, 1, 2, 3, 4, 5});
  CHECK(diameter_lower_bound(path(50), 4, 20) == 49);
  CHECK(diameter_lower_bound(cycle(20)) == 10);
  CHECK(is_connected(cycle(3)));
  CHECK_FALSE(is_connected(Graph::from_edges(3, {{0, 1}})));
}

TEST_CASE("graph file roundtrip") {
  const Graph c5 = cycle(5);
  std::istringstream in5(graph_to_string(c5));
  CHECK(parse_graph(in5) == c5);

  std::vector<Region> labels{Region::h1, Region::none, Region::gadget, Region::h2, Region::subdiv};
  const Graph lab = Graph::from_edges(5, c5.edges(), labels);
  std::istringstream in(graph_to_string(lab));
  const Graph back = parse_graph(in);
  CHECK(back == lab);
  CHECK(back.label(2) == Region::gadget);

  const Graph t3 = theorem3_build({0.5, 0.5, 4096, 1}).graph;
  std::istringstream in3(graph_to_string(t3));
  CHECK(parse_graph(in3) == t3);
}

TEST_CASE("golden serialization") {
  const Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {Region::t1, Region::none, Region::none, Region::f});
  CHECK(graph_to_string(g) == "#giantlab-graph v1\n4 4\n0 1\n0 3\n1 2\n2 3\nL 0 T1\nL 3 F\n");
  std::ostringstream out;
  write_graph(g, out, {"made by a test"});
  CHECK(out.str() == "#giantlab-graph v1\n# made by a test\n4 4\n0 1\n0 3\n1 2\n2 3\nL 0 T1\nL 3 F\n");
  std::istringstream in(out.str());
  CHECK(parse_graph(in) == g);
}

TEST_CASE("graph parse errors carry line numbers") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return parse_graph(in);
  };
  auto message = [&](const std::string& s) -> std::string {
    try {
      parse(s);
    } catch (const FormatError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message("#giantlab-graph v1\n4 1\n3 3\n").find("line 3") != std::string::npos);
  CHECK(message("#giantlab-graph v1\n4 1\n3 3\n").find("self-loop") != std::string::npos);
  CHECK(message("#giantlab-graph v1\n4 2\n0 1\n0 1\n").find("duplicate") != std::string::npos);
  CHECK(message("#giantlab-graph v1\n4 2\n0 1\n").find("line") != std::string::npos);
  CHECK(message("not a graph\n").find("line 1") != std::string::npos);
  CHECK(message("#giantlab-graph v1\n4 1\n0 x\n").find("line 3") != std::string::npos);
  CHECK(message("#giantlab-graph v1\n4 1\n0 9\n").find("line 3") != std::string::npos);
  CHECK(message("#giantlab-graph v1\n4 1\n0 1\nL 2 NOPE\n").find("line 4") != std::string::npos);
  CHECK_THROWS_AS(read_graph("/nonexistent/graph.txt"), IoError);
}
