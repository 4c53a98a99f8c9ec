// Copyright 2026 The mpclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "mpclab/generators.hpp"
#include "mpclab/graph.hpp"
#include "mpclab/graph_io.hpp"

using namespace mpclab;

namespace {

// All-pairs distances by Floyd-Warshall; independent of the BFS in the library.
std::vector<std::vector<std::uint32_t>> all_distances(const LegalGraph& g) {
  const std::size_t n = g.node_count();
  const std::uint32_t inf = 1u << 20;
  std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const Edge& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

LegalGraph make(std::vector<NodeRecord> nodes, std::vector<Edge> edges) {
  return LegalGraph(std::move(nodes), std::move(edges));
}

bool has_violation(const LegalityReport& r, ViolationKind k) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.kind == k; });
}

}  // namespace

TEST_CASE("validate_legal flags each kind of violation") {
  CHECK(validate_legal(make({{7, 0}, {7, 1}}, {})).ok());
  auto adjacent = validate_legal(make({{7, 0}, {7, 1}}, {{0, 1}}));
  CHECK(has_violation(adjacent, ViolationKind::duplicate_id_in_component));
  CHECK(adjacent.violations[0].message.find("duplicate ID") != std::string::npos);
  auto names = validate_legal(make({{1, 3}, {2, 3}}, {}));
  CHECK(has_violation(names, ViolationKind::duplicate_name));
  CHECK(names.violations[0].message.find("duplicate name") != std::string::npos);
  auto cap = validate_legal(LegalGraph({{9, 0}, {1, 1}}, {}, 8));
  CHECK(has_violation(cap, ViolationKind::id_over_cap));
  // Same ID in a component, but linked only through a path of other nodes.
  CHECK(has_violation(validate_legal(make({{5, 0}, {1, 1}, {5, 2}}, {{0, 1}, {1, 2}})),
                      ViolationKind::duplicate_id_in_component));
}

TEST_CASE("constructor rejects malformed edges") {
  CHECK_THROWS_AS(make({{0, 0}}, {{0, 0}}), GraphError);
  CHECK_THROWS_AS(make({{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}), GraphError);
  CHECK_THROWS_AS(make({{0, 0}}, {{0, 3}}), GraphError);
}

TEST_CASE("radius_ball examples") {
  auto star = star_graph(5);
  CHECK(radius_ball(star, 0, 1).graph == star);
  auto single = radius_ball(star, 3, 0);
  CHECK(single.graph.node_count() == 1);
  CHECK(single.graph.node(0) == star.node(3));
  auto path = path_graph(7);
  auto b = radius_ball(path, 3, 2);
  CHECK(b.graph.node_count() == 5);
  CHECK(b.graph.edge_count() == 4);
  CHECK(b.origin == std::vector<NodeIndex>{1, 2, 3, 4, 5});
  CHECK(b.center == 2);
  CHECK_THROWS_AS(radius_ball(path, 7, 1), GraphError);
}

TEST_CASE("radius_ball node sets match a distance oracle") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = random_bounded(12, 4, 1, 3, seed);
    auto d = all_distances(g);
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      for (std::uint32_t r = 0; r < 5; ++r) {
        auto ball = radius_ball(g, v, r);
        std::vector<NodeIndex> expect;
        for (NodeIndex u = 0; u < g.node_count(); ++u)
          if (d[v][u] <= r) expect.push_back(u);
        REQUIRE(ball.origin == expect);
        std::size_t inside = 0;
        for (const Edge& e : g.edges()) inside += d[v][e.u] <= r && d[v][e.v] <= r;
        REQUIRE(ball.graph.edge_count() == inside);
      }
    }
  }
}

TEST_CASE("d_radius_identical examples and properties") {
  auto c = cycle_graph(8);
  CenteredGraph a{c, 0, {}};
  CHECK(d_radius_identical(a, a, 3));

  std::vector<NodeRecord> renamed(c.nodes().begin(), c.nodes().end());
  for (auto& r : renamed) r.name += 100;
  CHECK(d_radius_identical(a, CenteredGraph{c.with_records(renamed), 0, {}}, 8));

  std::vector<NodeRecord> changed(c.nodes().begin(), c.nodes().end());
  changed[1].id = 99;
  CenteredGraph b{LegalGraph(changed, {c.edges().begin(), c.edges().end()}, 1000), 0, {}};
  CHECK_FALSE(d_radius_identical(a, b, 1));
  CHECK(d_radius_identical(a, b, 0));

  // Monotone in D, and symmetric, on a grid of random pairs.
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto g = random_connected(7, 2, 3, seed, IdPolicy::sequential());
    auto h = random_connected(7, 2, 3, seed / 3, IdPolicy::sequential());
    CenteredGraph x{g, 0, {}}, y{h, 0, {}};
    for (std::uint32_t d = 1; d < 6; ++d) {
      if (d_radius_identical(x, y, d)) CHECK(d_radius_identical(x, y, d - 1));
      CHECK(d_radius_identical(x, y, d) == d_radius_identical(y, x, d));
    }
  }
}

TEST_CASE("id_isomorphic handles repeated IDs") {
  // Two paths 5-1-5 and a relabeled copy; IDs repeat, so matching needs search.
  auto p = make({{5, 0}, {1, 1}, {5, 2}, {3, 3}}, {{0, 1}, {1, 2}, {2, 3}});
  auto q = make({{3, 0}, {5, 1}, {1, 2}, {5, 3}}, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(id_isomorphic(p, q));
  CHECK(id_isomorphic(p, q, std::make_pair(NodeIndex{2}, NodeIndex{1})));
  CHECK_FALSE(id_isomorphic(p, q, std::make_pair(NodeIndex{0}, NodeIndex{1})));
  auto r = make({{5, 0}, {1, 1}, {5, 2}, {3, 3}}, {{0, 1}, {1, 2}, {0, 3}});
  CHECK(id_isomorphic(p, r));
  auto s = make({{5, 0}, {1, 1}, {5, 2}, {3, 3}}, {{0, 1}, {1, 2}, {1, 3}});
  CHECK_FALSE(id_isomorphic(p, s));
}

TEST_CASE("disjoint_union") {
  CHECK(disjoint_union({}, RenamePolicy::offset).node_count() == 0);
  auto k2 = make({{1, 0}, {2, 1}}, {{0, 1}});
  std::vector<LegalGraph> parts{k2, k2};
  auto u = disjoint_union(parts, RenamePolicy::offset);
  CHECK(u.node_count() == 4);
  CHECK(validate_legal(u).ok());
  CHECK(u.node(2).id == 1);
  CHECK_FALSE(validate_legal(disjoint_union(parts, RenamePolicy::keep)).ok());
  std::vector<LegalGraph> c34{cycle_graph(3), cycle_graph(4)};
  auto c = disjoint_union(c34, RenamePolicy::offset);
  CHECK(c.node_count() == 7);
  CHECK(c.edge_count() == 7);
  std::vector<LegalGraph> tight{LegalGraph({{0, 7}}, {}, 8), LegalGraph({{0, 7}}, {}, 8)};
  CHECK_THROWS_AS(disjoint_union(tight, RenamePolicy::offset, 8), GraphError);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::vector<LegalGraph> gs{random_bounded(6, 3, 1, 2, seed), cycle_graph(5, IdPolicy::shuffled(seed)),
                               random_tree(4, seed)};
    CHECK(validate_legal(disjoint_union(gs, RenamePolicy::offset)).ok());
    CHECK(validate_legal(disjoint_union(gs, RenamePolicy::sequential)).ok());
  }
}

TEST_CASE("line_graph examples") {
  auto path = path_graph(3);
  auto l = line_graph(path);
  CHECK(l.node_count() == 2);
  CHECK(l.edge_count() == 1);
  auto tri = line_graph(cycle_graph(3));
  CHECK(tri.node_count() == 3);
  CHECK(tri.edge_count() == 3);
  auto claw = line_graph(star_graph(4));
  CHECK(claw.node_count() == 3);
  CHECK(claw.edge_count() == 3);
  CHECK(validate_legal(claw).ok());
  CHECK_THROWS_AS(line_graph(LegalGraph({{0, 0}, {1, 1}}, {{0, 1}}, 1ULL << 40)), GraphError);
}

TEST_CASE("line_graph sizes on every graph with at most 6 nodes") {
  for (std::size_t n = 0; n <= 6; ++n) {
    for_each_graph(n, [&](const LegalGraph& g) {
      auto l = line_graph(g);
      std::size_t expect = 0;
      for (NodeIndex v = 0; v < g.node_count(); ++v) expect += g.degree(v) * (g.degree(v) - 1) / 2;
      REQUIRE(l.node_count() == g.edge_count());
      REQUIRE(l.edge_count() == expect);
      // Adjacency by shared endpoint, checked pairwise.
      for (EdgeIndex i = 0; i < g.edge_count(); ++i) {
        for (EdgeIndex j = i + 1; j < g.edge_count(); ++j) {
          auto a = g.edge(i), b = g.edge(j);
          bool share = a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
          REQUIRE(l.adjacent(i, j) == share);
        }
      }
      REQUIRE(validate_legal(l).ok());
    });
  }
}

TEST_CASE("connected_component_of") {
  auto c = cycle_graph(6);
  CHECK(connected_component_of(c, 2).graph == c);
  auto iso = make({{0, 0}, {1, 1}, {2, 2}}, {{0, 1}});
  CHECK(connected_component_of(iso, 2).graph.node_count() == 1);
  auto two = disjoint_union(std::vector<LegalGraph>{cycle_graph(3), cycle_graph(3)}, RenamePolicy::offset);
  auto cc = connected_component_of(two, 1);
  CHECK(cc.origin == std::vector<NodeIndex>{0, 1, 2});
  CHECK(cc.center == 1);
}

TEST_CASE("generators") {
  auto c5 = cycle_graph(5);
  CHECK(c5.node_count() == 5);
  for (NodeIndex v = 0; v < 5; ++v) CHECK(c5.degree(v) == 2);
  auto tc = two_cycles(8);
  CHECK(tc.node_count() == 8);
  auto comp = component_labels(tc);
  CHECK(std::set<std::uint32_t>(comp.begin(), comp.end()).size() == 2);
  CHECK(connected_component_of(tc, 0).graph.node_count() == 4);
  auto r = random_regular(10, 3, 1);
  for (NodeIndex v = 0; v < 10; ++v) CHECK(r.degree(v) == 3);
  CHECK(validate_legal(r).ok());
  auto big = random_regular(64, 8, 3);
  for (NodeIndex v = 0; v < 64; ++v) CHECK(big.degree(v) == 8);
  CHECK_THROWS_AS(random_regular(5, 3, 1), GraphError);
  CHECK_THROWS_AS(generate("wheel", std::vector<std::uint64_t>{5}, 0), GraphError);
  std::vector<std::uint64_t> ids;
  auto shuffled = cycle_graph(9, IdPolicy::shuffled(4));
  for (const auto& rec : shuffled.nodes()) ids.push_back(rec.id);
  std::sort(ids.begin(), ids.end());
  for (std::uint64_t i = 0; i < 9; ++i) CHECK(ids[i] == i);
  CHECK(star_graph(5).max_degree() == 4);
  CHECK(clique_graph(5).edge_count() == 10);
}

TEST_CASE("connected graph census") {
  // Connected graphs up to isomorphism: 1, 1, 2, 6, 21, 112 (OEIS A001349).
  std::vector<std::size_t> expect{0, 1, 1, 2, 6, 21, 112};
  for (std::size_t n = 1; n <= 6; ++n) CHECK(connected_graphs(n).size() == expect[n]);
  CHECK(labeled_paths(4).size() == 12);
}

TEST_CASE("text format round trip") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = random_bounded(15, 4, 1, 3, seed);
    CHECK(graph_from_text(graph_to_text(g)) == g);
  }
  CHECK(graph_from_text("nodes 0\n").node_count() == 0);
  CHECK_THROWS_AS(graph_from_text("node 0 1 2\n"), GraphError);
  CHECK_THROWS_AS(graph_from_text("nodes 2\nnode 0 1 2\n"), GraphError);
  CHECK_THROWS_AS(graph_from_text("nodes 2\nnode 0 1 2\nnode 1 2 3\nedge 0 5\n"), GraphError);
  CHECK_THROWS_AS(graph_from_text("nodes 1\nnode 0 1 2\nbogus\n"), GraphError);
}

TEST_CASE("graph_power") {
  auto p = path_graph(5);
  auto sq = graph_power(p, 2);
  CHECK(sq.edge_count() == 4 + 3);
  CHECK(graph_power(p, 0).edge_count() == 0);
}
