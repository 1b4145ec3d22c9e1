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

#include "percolab/oracle.hpp"

#include <algorithm>
#include <bit>
#include <bitset>
#include <deque>
#include <memory>
#include <numeric>

namespace percolab {

FiniteGraph FiniteGraph::from_region(const Region& r,
                                     const LatticeModel& model) {
  FiniteGraph g;
  g.vertices = r.vertices();
  for (const Vertex& v : g.vertices) {
    for_each_neighbor(v, model, [&](const Vertex& w) {
      if (v < w && r.contains(w)) g.edges.emplace_back(v, w);
    });
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

FiniteGraph FiniteGraph::from_edges(std::vector<Edge> edges) {
  FiniteGraph g;
  for (const Edge& e : edges) {
    g.vertices.push_back(e.a());
    g.vertices.push_back(e.b());
  }
  std::sort(g.vertices.begin(), g.vertices.end());
  g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()),
                   g.vertices.end());
  g.edges = std::move(edges);
  return g;
}

int FiniteGraph::vertex_index(const Vertex& v) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) return -1;
  return static_cast<int>(it - vertices.begin());
}

void FiniteGraph::check_cap() const {
  if (edge_count() > kMaxOracleEdges) {
    throw ResourceError("exact enumeration is capped at " +
                        std::to_string(kMaxOracleEdges) + " edges, graph has " +
                        std::to_string(edge_count()));
  }
}

OpenComponents::OpenComponents(const FiniteGraph& g)
    : g_(&g), label_(g.vertices.size()), parent_(g.vertices.size()) {
  for (const Edge& e : g.edges) {
    ends_.emplace_back(g.vertex_index(e.a()), g.vertex_index(e.b()));
  }
}

const OpenComponents& OpenComponents::assign(Config config) {
  std::iota(parent_.begin(), parent_.end(), 0);
  auto find = [&](int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  };
  for (size_t i = 0; i < ends_.size(); ++i) {
    if (config >> i & 1U) {
      const int a = find(ends_[i].first);
      const int b = find(ends_[i].second);
      if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }
  }
  for (size_t v = 0; v < label_.size(); ++v) {
    label_[v] = find(static_cast<int>(v));
  }
  return *this;
}

int OpenComponents::size_of(int vertex) const {
  return static_cast<int>(
      std::count(label_.begin(), label_.end(), label_[vertex]));
}

namespace {

int require_vertex(const FiniteGraph& g, const Vertex& v) {
  const int i = g.vertex_index(v);
  if (i < 0) throw ArgumentError("vertex " + v.to_string() + " not in graph");
  return i;
}

std::vector<int> require_vertices(const FiniteGraph& g,
                                  const std::vector<Vertex>& vs) {
  std::vector<int> out;
  for (const Vertex& v : vs) out.push_back(require_vertex(g, v));
  return out;
}

// Shares one graph copy and one scratch OpenComponents between calls; the
// resulting callables are not reentrant.
struct Scratch {
  explicit Scratch(const FiniteGraph& graph)
      : g(std::make_shared<const FiniteGraph>(graph)),
        comps(std::make_shared<OpenComponents>(*g)) {}
  std::shared_ptr<const FiniteGraph> g;
  std::shared_ptr<OpenComponents> comps;
};

struct Adjacency {
  // (neighbor, edge index) per vertex.
  std::vector<std::vector<std::pair<int, int>>> out;

  explicit Adjacency(const FiniteGraph& g) : out(g.vertices.size()) {
    for (size_t i = 0; i < g.edges.size(); ++i) {
      const int a = g.vertex_index(g.edges[i].a());
      const int b = g.vertex_index(g.edges[i].b());
      out[a].emplace_back(b, static_cast<int>(i));
      out[b].emplace_back(a, static_cast<int>(i));
    }
  }
};

void collect_paths(const Adjacency& adj, int at, int goal,
                   std::vector<uint8_t>& on_path, Config used,
                   std::vector<Config>& out) {
  if (at == goal) {
    out.push_back(used);
    return;
  }
  for (const auto& [w, e] : adj.out[at]) {
    if (on_path[w]) continue;
    on_path[w] = 1;
    collect_paths(adj, w, goal, on_path, used | (Config{1} << e), out);
    on_path[w] = 0;
  }
}

// Edge masks of all simple paths from x to y.
std::vector<Config> simple_paths(const FiniteGraph& g, int x, int y) {
  Adjacency adj(g);
  std::vector<uint8_t> on_path(g.vertices.size(), 0);
  on_path[x] = 1;
  std::vector<Config> out;
  collect_paths(adj, x, y, on_path, 0, out);
  return out;
}

}  // namespace

Event always_event() {
  return [](Config) { return true; };
}

Event edge_open_event(const FiniteGraph& g, int edge) {
  if (edge < 0 || edge >= g.edge_count()) {
    throw ArgumentError("edge index out of range");
  }
  return [edge](Config c) { return (c >> edge & 1U) != 0; };
}

Event connection_event(const FiniteGraph& g, const Vertex& x,
                       const Vertex& y) {
  const int xi = require_vertex(g, x);
  const int yi = require_vertex(g, y);
  Scratch s(g);
  return [s, xi, yi](Config c) {
    const OpenComponents& oc = s.comps->assign(c);
    return oc.label(xi) == oc.label(yi);
  };
}

Event reaches_event(const FiniteGraph& g, const Vertex& x,
                    std::vector<Vertex> targets) {
  const int xi = require_vertex(g, x);
  const std::vector<int> ts = require_vertices(g, targets);
  Scratch s(g);
  return [s, xi, ts](Config c) {
    const OpenComponents& oc = s.comps->assign(c);
    for (int t : ts) {
      if (oc.label(t) == oc.label(xi)) return true;
    }
    return false;
  };
}

Event both(Event a, Event b) {
  return [a = std::move(a), b = std::move(b)](Config c) { return a(c) && b(c); };
}

Event complement(Event a) {
  return [a = std::move(a)](Config c) { return !a(c); };
}

Statistic indicator(Event e) {
  return [e = std::move(e)](Config c) -> int64_t { return e(c) ? 1 : 0; };
}

Statistic cluster_size_statistic(const FiniteGraph& g, const Vertex& x) {
  const int xi = require_vertex(g, x);
  Scratch s(g);
  return [s, xi](Config c) -> int64_t {
    return s.comps->assign(c).size_of(xi);
  };
}

Statistic hits_statistic(const FiniteGraph& g, const Vertex& x,
                         std::vector<Vertex> set) {
  const int xi = require_vertex(g, x);
  const std::vector<int> ts = require_vertices(g, set);
  Scratch s(g);
  return [s, xi, ts](Config c) -> int64_t {
    const OpenComponents& oc = s.comps->assign(c);
    int64_t k = 0;
    for (int t : ts) k += oc.label(t) == oc.label(xi) ? 1 : 0;
    return k;
  };
}

Statistic crossing_count_statistic(const FiniteGraph& g,
                                   std::vector<Vertex> left,
                                   std::vector<Vertex> right) {
  const std::vector<int> ls = require_vertices(g, left);
  const std::vector<int> rs = require_vertices(g, right);
  Scratch s(g);
  return [s, ls, rs](Config c) -> int64_t {
    const OpenComponents& oc = s.comps->assign(c);
    std::vector<int> lab_left, lab_both;
    for (int v : ls) lab_left.push_back(oc.label(v));
    for (int v : rs) {
      const int l = oc.label(v);
      if (std::find(lab_left.begin(), lab_left.end(), l) != lab_left.end()) {
        lab_both.push_back(l);
      }
    }
    std::sort(lab_both.begin(), lab_both.end());
    return std::unique(lab_both.begin(), lab_both.end()) - lab_both.begin();
  };
}

Statistic intrinsic_radius_statistic(const FiniteGraph& g, const Vertex& x) {
  const int xi = require_vertex(g, x);
  auto adj = std::make_shared<const Adjacency>(g);
  const size_t nv = g.vertices.size();
  return [adj, xi, nv](Config c) -> int64_t {
    std::vector<int> depth(nv, -1);
    std::deque<int> q{xi};
    depth[xi] = 0;
    int64_t radius = 0;
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      for (const auto& [w, e] : adj->out[v]) {
        if ((c >> e & 1U) && depth[w] < 0) {
          depth[w] = depth[v] + 1;
          radius = std::max<int64_t>(radius, depth[w]);
          q.push_back(w);
        }
      }
    }
    return radius;
  };
}

std::vector<uint8_t> event_table(const FiniteGraph& g, const Event& event) {
  g.check_cap();
  const Config n = Config{1} << g.edge_count();
  std::vector<uint8_t> t(n);
  for (Config c = 0; c < n; ++c) t[c] = event(c) ? 1 : 0;
  return t;
}

PPolynomial table_polynomial(const FiniteGraph& g,
                             const std::vector<uint8_t>& table) {
  const int m = g.edge_count();
  std::vector<uint64_t> counts(m + 1, 0);
  for (Config c = 0; c < table.size(); ++c) {
    if (table[c]) ++counts[std::popcount(c)];
  }
  return PPolynomial::from_bernstein(
      std::vector<BigInt>(counts.begin(), counts.end()));
}

PPolynomial event_polynomial(const FiniteGraph& g, const Event& event) {
  return table_polynomial(g, event_table(g, event));
}

PPolynomial oracle_expectation(const FiniteGraph& g, const Statistic& stat) {
  g.check_cap();
  const int m = g.edge_count();
  std::vector<BigInt> sums(m + 1, 0);
  std::vector<int64_t> partial(m + 1, 0);
  const Config n = Config{1} << m;
  for (Config c = 0; c < n; ++c) partial[std::popcount(c)] += stat(c);
  for (int k = 0; k <= m; ++k) sums[k] = partial[k];
  return PPolynomial::from_bernstein(sums);
}

void require_increasing(const FiniteGraph& g, const std::vector<uint8_t>& table,
                        const std::string& what) {
  const int m = g.edge_count();
  for (Config c = 0; c < table.size(); ++c) {
    if (!table[c]) continue;
    for (int e = 0; e < m; ++e) {
      const Config up = c | (Config{1} << e);
      if (!table[up]) {
        throw PreconditionError(
            what + " is not increasing: holds at " +
            std::bitset<32>(c).to_string().substr(32 - m) + " but fails at " +
            std::bitset<32>(up).to_string().substr(32 - m));
      }
    }
  }
}

RussoResult russo_check(const FiniteGraph& g, const Event& increasing) {
  const std::vector<uint8_t> t = event_table(g, increasing);
  require_increasing(g, t, "event");
  RussoResult r;
  r.lhs = table_polynomial(g, t).derivative();
  std::vector<uint8_t> pivotal(t.size());
  for (int e = 0; e < g.edge_count(); ++e) {
    const Config bit = Config{1} << e;
    for (Config c = 0; c < t.size(); ++c) {
      pivotal[c] = t[c | bit] != t[c & ~bit] ? 1 : 0;
    }
    r.rhs += table_polynomial(g, pivotal);
  }
  return r;
}

InequalityResult fkg_check(const FiniteGraph& g, const Event& a,
                           const Event& b, const Rational& p) {
  const std::vector<uint8_t> ta = event_table(g, a);
  const std::vector<uint8_t> tb = event_table(g, b);
  require_increasing(g, ta, "first event");
  require_increasing(g, tb, "second event");
  std::vector<uint8_t> tab(ta.size());
  for (size_t c = 0; c < ta.size(); ++c) tab[c] = ta[c] & tb[c];
  InequalityResult r;
  r.lhs = table_polynomial(g, tab)(p);
  r.rhs = table_polynomial(g, ta)(p) * table_polynomial(g, tb)(p);
  r.holds = r.lhs >= r.rhs;
  return r;
}

std::vector<uint8_t> disjoint_connection_table(const FiniteGraph& g,
                                               const VertexPair& pair1,
                                               const VertexPair& pair2) {
  g.check_cap();
  const std::vector<Config> w1 =
      simple_paths(g, require_vertex(g, pair1.first),
                   require_vertex(g, pair1.second));
  const std::vector<Config> w2 =
      simple_paths(g, require_vertex(g, pair2.first),
                   require_vertex(g, pair2.second));
  const int m = g.edge_count();
  std::vector<uint8_t> t(Config{1} << m, 0);
  for (Config a : w1) {
    for (Config b : w2) {
      if ((a & b) == 0) t[a | b] = 1;
    }
  }
  // Close upwards: any superset of a disjoint witness pair also qualifies.
  for (int e = 0; e < m; ++e) {
    const Config bit = Config{1} << e;
    for (Config c = 0; c < t.size(); ++c) {
      if ((c & bit) && t[c ^ bit]) t[c] = 1;
    }
  }
  return t;
}

InequalityResult bk_check_connections(const FiniteGraph& g,
                                      const VertexPair& pair1,
                                      const VertexPair& pair2,
                                      const Rational& p) {
  const std::vector<uint8_t> disjoint =
      disjoint_connection_table(g, pair1, pair2);
  InequalityResult r;
  r.lhs = table_polynomial(g, disjoint)(p);
  r.rhs = event_polynomial(g, connection_event(g, pair1.first, pair1.second))(p) *
          event_polynomial(g, connection_event(g, pair2.first, pair2.second))(p);
  r.holds = r.lhs <= r.rhs;
  return r;
}

}  // namespace percolab
