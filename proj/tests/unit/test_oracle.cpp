/* Copyright 2026 The percolab Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <map>
#include <queue>

#include "doctest.h"
#include "percolab/oracle.hpp"

using namespace percolab;

namespace {

const Rational kHalf(1, 2);

PPolynomial poly(std::initializer_list<int> c) {
  std::vector<Rational> v;
  for (int x : c) v.emplace_back(x);
  return PPolynomial(v);
}

FiniteGraph unit_square() {
  return FiniteGraph::from_region(
      Region::cuboid(Vertex{0, 0}, Vertex{1, 1}), LatticeModel::nearest_neighbor(2));
}

// Connectivity of x and y using only the edges in `mask`.
bool connected(const FiniteGraph& g, Config mask, int x, int y) {
  std::vector<int> parent(g.vertices.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!(mask >> e & 1)) continue;
    parent[find(g.vertex_index(g.edges[e].a()))] = find(g.vertex_index(g.edges[e].b()));
  }
  return find(x) == find(y);
}

// Edge-disjoint x-y paths in the open subgraph (unit-capacity max flow).
int max_flow(const FiniteGraph& g, Config open, int s, int t) {
  const size_t n = g.vertices.size();
  std::vector<std::vector<int>> cap(n, std::vector<int>(n, 0));
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!(open >> e & 1)) continue;
    const int a = g.vertex_index(g.edges[e].a());
    const int b = g.vertex_index(g.edges[e].b());
    ++cap[a][b];
    ++cap[b][a];
  }
  int flow = 0;
  while (true) {
    std::vector<int> prev(n, -1);
    prev[s] = s;
    std::queue<int> q;
    q.push(s);
    while (!q.empty() && prev[t] < 0) {
      const int u = q.front();
      q.pop();
      for (size_t v = 0; v < n; ++v) {
        if (prev[v] < 0 && cap[u][v] > 0) {
          prev[v] = u;
          q.push(static_cast<int>(v));
        }
      }
    }
    if (prev[t] < 0) return flow;
    for (int v = t; v != s; v = prev[v]) {
      --cap[prev[v]][v];
      ++cap[v][prev[v]];
    }
    ++flow;
  }
}

// Disjoint occurrence by definition: the open edges split into two sets,
// one witnessing each connection.
bool disjoint_brute(const FiniteGraph& g, Config open, const VertexPair& a,
                    const VertexPair& b) {
  const int x1 = g.vertex_index(a.first), y1 = g.vertex_index(a.second);
  const int x2 = g.vertex_index(b.first), y2 = g.vertex_index(b.second);
  for (Config s = open;; s = (s - 1) & open) {
    if (connected(g, s, x1, y1) && connected(g, open & ~s, x2, y2)) return true;
    if (s == 0) return false;
  }
}

std::vector<VertexPair> all_pairs(const FiniteGraph& g) {
  std::vector<VertexPair> out;
  for (size_t i = 0; i < g.vertices.size(); ++i)
    for (size_t j = i + 1; j < g.vertices.size(); ++j)
      out.emplace_back(g.vertices[i], g.vertices[j]);
  return out;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("unit square connection polynomial") {
  const auto g = unit_square();
  const auto P = event_polynomial(g, connection_event(g, Vertex{0, 0}, Vertex{1, 1}));
  CHECK(P == poly({0, 0, 2, 0, -1}));
  CHECK(P(kHalf) == Rational(7, 16));
  CHECK(P.evaluate(0.5) == doctest::Approx(0.4375));
}

TEST_CASE("trivial events") {
  const auto g = FiniteGraph::from_edges({Edge(Vertex{0}, Vertex{1})});
  CHECK(event_polynomial(g, edge_open_event(g, 0)) == poly({0, 1}));
  CHECK(event_polynomial(g, always_event()) == PPolynomial::constant(1));
  CHECK(event_polynomial(unit_square(), always_event()) == PPolynomial::constant(1));
}

TEST_CASE("Russo examples") {
  const auto e = FiniteGraph::from_edges({Edge(Vertex{0}, Vertex{1})});
  auto r = russo_check(e, edge_open_event(e, 0));
  CHECK(r.lhs == PPolynomial::constant(1));
  CHECK(r.holds());
  const auto g = unit_square();
  r = russo_check(g, connection_event(g, Vertex{0, 0}, Vertex{1, 1}));
  CHECK(r.lhs == poly({0, 4, 0, -4}));
  CHECK(r.rhs == poly({0, 4, 0, -4}));
  r = russo_check(g, always_event());
  CHECK(r.lhs.is_zero());
  CHECK(r.rhs.is_zero());
}

TEST_CASE("non-increasing events are rejected with a witness pair") {
  const auto g = unit_square();
  try {
    russo_check(g, complement(connection_event(g, Vertex{0, 0}, Vertex{1, 1})));
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("but fails at") != std::string::npos);
  }
  CHECK_THROWS_AS(
      fkg_check(g, complement(connection_event(g, Vertex{0, 0}, Vertex{1, 0})),
                always_event(), kHalf),
      PreconditionError);
  CHECK_NOTHROW(fkg_check(g, complement(always_event()), always_event(), kHalf));
}

TEST_CASE("FKG examples") {
  const auto g = unit_square();
  const Event a = connection_event(g, Vertex{0, 0}, Vertex{1, 0});
  const Event b = connection_event(g, Vertex{1, 0}, Vertex{1, 1});
  auto r = fkg_check(g, a, a, kHalf);
  CHECK(r.holds);
  r = fkg_check(g, a, b, kHalf);
  CHECK(r.holds);
  CHECK(r.lhs > r.rhs);
  r = fkg_check(g, a, always_event(), Rational(1, 3));
  CHECK(r.holds);
  CHECK(r.lhs == r.rhs);
}

TEST_CASE("BK examples") {
  const auto two = FiniteGraph::from_edges(
      {Edge(Vertex{0, 0}, Vertex{1, 0}), Edge(Vertex{5, 5}, Vertex{5, 6})});
  auto r = bk_check_connections(two, {Vertex{0, 0}, Vertex{1, 0}},
                                {Vertex{5, 5}, Vertex{5, 6}}, kHalf);
  CHECK(r.holds);
  CHECK(r.lhs == r.rhs);
  const auto one = FiniteGraph::from_edges({Edge(Vertex{0}, Vertex{1})});
  r = bk_check_connections(one, {Vertex{0}, Vertex{1}}, {Vertex{0}, Vertex{1}}, kHalf);
  CHECK(r.lhs == 0);
  CHECK(r.rhs == Rational(1, 4));
  const auto g = unit_square();
  const VertexPair diag{Vertex{0, 0}, Vertex{1, 1}};
  r = bk_check_connections(g, diag, diag, kHalf);
  CHECK(r.lhs == Rational(1, 16));
  CHECK(r.rhs == Rational(49, 256));
  CHECK(r.holds);
}

TEST_CASE("identical-pair disjointness equals max-flow >= 2") {
  const auto nn2 = LatticeModel::nearest_neighbor(2);
  const std::vector<FiniteGraph> graphs = {
      unit_square(),
      FiniteGraph::from_region(Region::cuboid(Vertex{0, 0}, Vertex{2, 1}), nn2),
      FiniteGraph::from_region(Region::box(2, 1), nn2),
      FiniteGraph::from_region(Region::box(1, 2), LatticeModel::spread_out(1, 2)),
  };
  for (const auto& g : graphs) {
    for (const auto& pr : all_pairs(g)) {
      const auto table = disjoint_connection_table(g, pr, pr);
      const int s = g.vertex_index(pr.first), t = g.vertex_index(pr.second);
      for (Config w = 0; w < (Config{1} << g.edge_count()); ++w) {
        REQUIRE(static_cast<bool>(table[w]) == (max_flow(g, w, s, t) >= 2));
      }
    }
  }
}

TEST_CASE("disjoint occurrence agrees with the edge-partition definition") {
  const auto nn2 = LatticeModel::nearest_neighbor(2);
  const std::vector<FiniteGraph> graphs = {
      unit_square(),
      FiniteGraph::from_region(Region::cuboid(Vertex{0, 0}, Vertex{2, 1}), nn2),
      FiniteGraph::from_region(Region::box(1, 2), LatticeModel::spread_out(1, 2)),
  };
  for (const auto& g : graphs) {
    const auto pairs = all_pairs(g);
    for (size_t i = 0; i < pairs.size(); i += 2) {
      for (size_t j = i; j < pairs.size(); j += 3) {
        const auto table = disjoint_connection_table(g, pairs[i], pairs[j]);
        for (Config w = 0; w < (Config{1} << g.edge_count()); ++w) {
          REQUIRE(static_cast<bool>(table[w]) ==
                  disjoint_brute(g, w, pairs[i], pairs[j]));
        }
      }
    }
  }
}

TEST_CASE("oracle expectations") {
  const auto nn1 = LatticeModel::nearest_neighbor(1);
  const Region b1 = Region::box(1, 1);
  const auto g = FiniteGraph::from_region(b1, nn1);
  CHECK(oracle_expectation(g, hits_statistic(g, Vertex{0}, boundary(b1))) ==
        poly({0, 2}));
  CHECK(oracle_expectation(g, [](Config) -> int64_t { return 1; }) ==
        PPolynomial::constant(1));
  CHECK(oracle_expectation(g, crossing_count_statistic(g, {Vertex{-1}}, {Vertex{1}})) ==
        poly({0, 0, 1}));
  CHECK(oracle_expectation(g, cluster_size_statistic(g, Vertex{0})) == poly({1, 2}));
}

TEST_CASE("complements total one and monotone events have nonnegative slope") {
  const auto nn2 = LatticeModel::nearest_neighbor(2);
  const auto g = FiniteGraph::from_region(Region::box(2, 1), nn2);
  const std::vector<Event> events = {
      connection_event(g, Vertex{-1, -1}, Vertex{1, 1}),
      reaches_event(g, Vertex{0, 0}, boundary(Region::box(2, 1))),
      both(connection_event(g, Vertex{0, 0}, Vertex{1, 0}),
           connection_event(g, Vertex{0, 0}, Vertex{0, 1})),
      [s = cluster_size_statistic(g, Vertex{0, 0})](Config w) { return s(w) >= 5; },
  };
  for (const Event& e : events) {
    const auto P = event_polynomial(g, e);
    CHECK(P + event_polynomial(g, complement(e)) == PPolynomial::constant(1));
    const auto dP = P.derivative();
    for (int k = 0; k <= 1000; ++k) {
      CHECK(dP(Rational(k, 1000)) >= 0);
    }
    CHECK(russo_check(g, e).holds());
  }
}

TEST_CASE("edge cap") {
  const auto g = FiniteGraph::from_region(Region::box(2, 2),
                                          LatticeModel::nearest_neighbor(2));
  CHECK(g.edge_count() == 40);
  CHECK_THROWS_AS(event_polynomial(g, always_event()), ResourceError);
  CHECK_THROWS_AS(oracle_expectation(g, [](Config) -> int64_t { return 1; }),
                  ResourceError);
}

TEST_CASE("identity catalog passes and is large enough") {
  const auto checks = run_identity_catalog();
  std::map<std::string, int> count;
  for (const auto& c : checks) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.passed);
    ++count[c.kind];
  }
  CHECK(count["russo"] >= 10);
  CHECK(count["fkg"] + count["bk"] >= 20);
  CHECK(count["total"] >= 8);
}

}  // TEST_SUITE
