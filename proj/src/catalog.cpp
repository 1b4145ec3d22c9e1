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

// Fixture catalog for the exact identity audits.

#include <sstream>

#include "percolab/oracle.hpp"

namespace percolab {

namespace {

struct NamedEvent {
  std::string name;
  Event event;
};

struct Fixture {
  std::string name;
  FiniteGraph graph;
  std::vector<NamedEvent> increasing;
  std::vector<std::pair<VertexPair, VertexPair>> bk_pairs;
};

std::string ratio(const Rational& a) {
  std::ostringstream os;
  os << a;
  return os.str();
}

std::vector<Vertex> face(const FiniteGraph& g, int axis, int32_t value) {
  std::vector<Vertex> out;
  for (const Vertex& v : g.vertices) {
    if (v[axis] == value) out.push_back(v);
  }
  return out;
}

Event at_least(Statistic s, int64_t k) {
  return [s = std::move(s), k](Config c) { return s(c) >= k; };
}

std::vector<Fixture> build_fixtures() {
  std::vector<Fixture> fx;
  const auto nn1 = LatticeModel::nearest_neighbor(1);
  const auto nn2 = LatticeModel::nearest_neighbor(2);
  const auto nn3 = LatticeModel::nearest_neighbor(3);

  {
    Fixture f{"single-edge", FiniteGraph::from_edges({Edge(Vertex{0}, Vertex{1})}),
              {}, {}};
    f.increasing = {{"edge-open", edge_open_event(f.graph, 0)},
                    {"always", always_event()}};
    f.bk_pairs = {{{Vertex{0}, Vertex{1}}, {Vertex{0}, Vertex{1}}}};
    fx.push_back(std::move(f));
  }
  {
    Fixture f{"unit-square",
              FiniteGraph::from_region(
                  Region::cuboid(Vertex{0, 0}, Vertex{1, 1}), nn2),
              {},
              {}};
    const FiniteGraph& g = f.graph;
    f.increasing = {
        {"(0,0)<->(1,1)", connection_event(g, {0, 0}, {1, 1})},
        {"(0,0)<->(1,0)", connection_event(g, {0, 0}, {1, 0})},
        {"(1,0)<->(1,1)", connection_event(g, {1, 0}, {1, 1})},
        {"(0,1)<->(1,1)", connection_event(g, {0, 1}, {1, 1})},
    };
    f.bk_pairs = {
        {{Vertex{0, 0}, Vertex{1, 1}}, {Vertex{0, 0}, Vertex{1, 1}}},
        {{Vertex{0, 0}, Vertex{1, 0}}, {Vertex{0, 1}, Vertex{1, 1}}},
        {{Vertex{0, 0}, Vertex{1, 0}}, {Vertex{1, 0}, Vertex{1, 1}}},
        {{Vertex{0, 0}, Vertex{1, 1}}, {Vertex{0, 1}, Vertex{1, 0}}},
        {{Vertex{0, 0}, Vertex{0, 1}}, {Vertex{0, 0}, Vertex{0, 1}}},
    };
    fx.push_back(std::move(f));
  }
  {
    Fixture f{"segment-B3", FiniteGraph::from_region(Region::box(1, 3), nn1), {}, {}};
    const FiniteGraph& g = f.graph;
    f.increasing = {
        {"0<->dB(3)", reaches_event(g, {0}, {{-3}, {3}})},
        {"-3<->3", connection_event(g, {-3}, {3})},
        {"|C(0)|>=3", at_least(cluster_size_statistic(g, {0}), 3)},
    };
    f.bk_pairs = {
        {{Vertex{-3}, Vertex{0}}, {Vertex{0}, Vertex{3}}},
        {{Vertex{-1}, Vertex{1}}, {Vertex{0}, Vertex{2}}},
        {{Vertex{-3}, Vertex{-1}}, {Vertex{1}, Vertex{3}}},
    };
    fx.push_back(std::move(f));
  }
  {
    Fixture f{"box-B1-d2", FiniteGraph::from_region(Region::box(2, 1), nn2), {}, {}};
    const FiniteGraph& g = f.graph;
    const std::vector<Vertex> bdry = boundary(Region::box(2, 1));
    f.increasing = {
        {"0<->dB(1)", reaches_event(g, {0, 0}, bdry)},
        {"(-1,-1)<->(1,1)", connection_event(g, {-1, -1}, {1, 1})},
        {"left-right crossing",
         at_least(crossing_count_statistic(g, face(g, 0, -1), face(g, 0, 1)),
                  1)},
        {"|C(0)|>=4", at_least(cluster_size_statistic(g, {0, 0}), 4)},
        {"0<->e1 and 0<->e2", both(connection_event(g, {0, 0}, {1, 0}),
                                   connection_event(g, {0, 0}, {0, 1}))},
        {"(-1,0)<->(1,0)", connection_event(g, {-1, 0}, {1, 0})},
        {"(1,-1)<->(1,1)", connection_event(g, {1, -1}, {1, 1})},
    };
    f.bk_pairs = {
        {{Vertex{-1, -1}, Vertex{1, 1}}, {Vertex{-1, 1}, Vertex{1, -1}}},
        {{Vertex{-1, 0}, Vertex{1, 0}}, {Vertex{0, -1}, Vertex{0, 1}}},
        {{Vertex{0, 0}, Vertex{1, 1}}, {Vertex{0, 0}, Vertex{1, 1}}},
        {{Vertex{-1, -1}, Vertex{-1, 1}}, {Vertex{1, -1}, Vertex{1, 1}}},
        {{Vertex{0, 0}, Vertex{-1, -1}}, {Vertex{0, 0}, Vertex{1, 1}}},
        {{Vertex{-1, 0}, Vertex{1, 0}}, {Vertex{-1, 0}, Vertex{1, 0}}},
    };
    fx.push_back(std::move(f));
  }
  {
    Fixture f{"grid-3x2",
              FiniteGraph::from_region(
                  Region::cuboid(Vertex{0, 0}, Vertex{2, 1}), nn2),
              {},
              {}};
    const FiniteGraph& g = f.graph;
    f.increasing = {
        {"(0,0)<->(2,1)", connection_event(g, {0, 0}, {2, 1})},
        {"(0,0)<->(2,0)", connection_event(g, {0, 0}, {2, 0})},
    };
    f.bk_pairs = {
        {{Vertex{0, 0}, Vertex{2, 0}}, {Vertex{0, 1}, Vertex{2, 1}}},
        {{Vertex{0, 0}, Vertex{2, 1}}, {Vertex{0, 1}, Vertex{2, 0}}},
        {{Vertex{0, 0}, Vertex{2, 0}}, {Vertex{0, 0}, Vertex{2, 0}}},
    };
    fx.push_back(std::move(f));
  }
  {
    Fixture f{"unit-cube-d3",
              FiniteGraph::from_region(
                  Region::cuboid(Vertex{0, 0, 0}, Vertex{1, 1, 1}), nn3),
              {},
              {}};
    const FiniteGraph& g = f.graph;
    f.increasing = {
        {"(0,0,0)<->(1,1,1)", connection_event(g, {0, 0, 0}, {1, 1, 1})},
    };
    f.bk_pairs = {
        {{Vertex{0, 0, 0}, Vertex{1, 1, 1}}, {Vertex{0, 0, 0}, Vertex{1, 1, 1}}},
        {{Vertex{0, 0, 0}, Vertex{1, 1, 0}}, {Vertex{0, 0, 1}, Vertex{1, 1, 1}}},
    };
    fx.push_back(std::move(f));
  }
  {
    Fixture f{"spread-out-d1-L2",
              FiniteGraph::from_region(Region::box(1, 2),
                                       LatticeModel::spread_out(1, 2)),
              {},
              {}};
    const FiniteGraph& g = f.graph;
    f.increasing = {
        {"-2<->2", connection_event(g, {-2}, {2})},
    };
    f.bk_pairs = {
        {{Vertex{-2}, Vertex{2}}, {Vertex{-2}, Vertex{2}}},
    };
    fx.push_back(std::move(f));
  }
  {
    Fixture f{"two-disjoint-edges",
              FiniteGraph::from_edges({Edge(Vertex{0, 0}, Vertex{1, 0}),
                                       Edge(Vertex{0, 2}, Vertex{1, 2})}),
              {},
              {}};
    f.bk_pairs = {
        {{Vertex{0, 0}, Vertex{1, 0}}, {Vertex{0, 2}, Vertex{1, 2}}},
    };
    fx.push_back(std::move(f));
  }
  return fx;
}

}  // namespace

std::vector<OracleCheck> run_identity_catalog() {
  std::vector<OracleCheck> out;
  const std::vector<Rational> ps = {Rational(1, 3), Rational(1, 2)};
  for (const Fixture& f : build_fixtures()) {
    const FiniteGraph& g = f.graph;
    {
      const PPolynomial total = event_polynomial(g, always_event());
      out.push_back({f.name + ": P(always)", "total",
                     total == PPolynomial::constant(1), total.to_string()});
    }
    for (const NamedEvent& ev : f.increasing) {
      const PPolynomial sum = event_polynomial(g, ev.event) +
                              event_polynomial(g, complement(ev.event));
      out.push_back({f.name + ": P(" + ev.name + ")+P(not)", "total",
                     sum == PPolynomial::constant(1), sum.to_string()});
      const RussoResult r = russo_check(g, ev.event);
      out.push_back({f.name + ": " + ev.name, "russo", r.holds(),
                     "d/dp=" + r.lhs.to_string() +
                         " pivotal=" + r.rhs.to_string()});
    }
    for (size_t i = 0; i < f.increasing.size(); ++i) {
      for (size_t j = i; j < f.increasing.size(); ++j) {
        for (const Rational& p : ps) {
          const InequalityResult r = fkg_check(g, f.increasing[i].event,
                                               f.increasing[j].event, p);
          out.push_back({f.name + ": " + f.increasing[i].name + " & " +
                             f.increasing[j].name + " @p=" + ratio(p),
                         "fkg", r.holds,
                         "P(AB)=" + ratio(r.lhs) + " P(A)P(B)=" + ratio(r.rhs)});
        }
      }
    }
    for (const auto& [a, b] : f.bk_pairs) {
      for (const Rational& p : ps) {
        const InequalityResult r = bk_check_connections(g, a, b, p);
        out.push_back({f.name + ": " + a.first.to_string() + "<->" +
                           a.second.to_string() + " o " +
                           b.first.to_string() + "<->" + b.second.to_string() +
                           " @p=" + ratio(p),
                       "bk", r.holds,
                       "P(o)=" + ratio(r.lhs) + " product=" + ratio(r.rhs)});
      }
    }
  }
  return out;
}

}  // namespace percolab
