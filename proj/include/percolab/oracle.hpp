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

// Ground truth on tiny graphs: every probability is a sum over all 2^|E|
// bond configurations, collected exactly as a polynomial in p. Used to audit
// the FKG and BK inequalities and Russo's formula with zero tolerance, and to
// cross-check every Monte Carlo estimator.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "percolab/lattice.hpp"
#include "percolab/polynomial.hpp"
#include "percolab/region.hpp"

namespace percolab {

inline constexpr int kMaxOracleEdges = 22;

// Bond configuration: bit i set iff edges[i] is open.
using Config = uint32_t;
using Event = std::function<bool(Config)>;
using Statistic = std::function<int64_t(Config)>;

struct FiniteGraph {
  std::vector<Vertex> vertices;  // sorted
  std::vector<Edge> edges;       // catalog order = configuration bit order

  // Induced subgraph of `model` on the (finite) region; edges sorted.
  static FiniteGraph from_region(const Region& r, const LatticeModel& model);
  static FiniteGraph from_edges(std::vector<Edge> edges);

  int vertex_index(const Vertex& v) const;  // -1 if absent
  int edge_count() const { return static_cast<int>(edges.size()); }
  // Throws ResourceError above kMaxOracleEdges.
  void check_cap() const;
};

// Component labels of the open subgraph for one configuration.
class OpenComponents {
 public:
  explicit OpenComponents(const FiniteGraph& g);
  // Recomputes labels for `config`; returns *this for chaining.
  const OpenComponents& assign(Config config);
  int label(int vertex) const { return label_[vertex]; }
  int size_of(int vertex) const;

 private:
  const FiniteGraph* g_;
  std::vector<std::pair<int, int>> ends_;
  std::vector<int> label_;
  std::vector<int> parent_;
};

// Event and statistic builders over a fixed graph.
Event always_event();
Event edge_open_event(const FiniteGraph& g, int edge);
Event connection_event(const FiniteGraph& g, const Vertex& x, const Vertex& y);
Event reaches_event(const FiniteGraph& g, const Vertex& x,
                    std::vector<Vertex> targets);
Event both(Event a, Event b);
Event complement(Event a);
Statistic indicator(Event e);
Statistic cluster_size_statistic(const FiniteGraph& g, const Vertex& x);
// |C(x) intersected with `set`|.
Statistic hits_statistic(const FiniteGraph& g, const Vertex& x,
                         std::vector<Vertex> set);
// Clusters meeting both `left` and `right`.
Statistic crossing_count_statistic(const FiniteGraph& g,
                                   std::vector<Vertex> left,
                                   std::vector<Vertex> right);
// Maximum BFS depth of the open cluster of x (its intrinsic radius).
Statistic intrinsic_radius_statistic(const FiniteGraph& g, const Vertex& x);

// Truth table of `event` over all configurations.
std::vector<uint8_t> event_table(const FiniteGraph& g, const Event& event);

PPolynomial event_polynomial(const FiniteGraph& g, const Event& event);
PPolynomial table_polynomial(const FiniteGraph& g,
                             const std::vector<uint8_t>& table);
PPolynomial oracle_expectation(const FiniteGraph& g, const Statistic& stat);

// Throws PreconditionError naming a pair w <= w' with 1_A(w) > 1_A(w').
void require_increasing(const FiniteGraph& g, const std::vector<uint8_t>& table,
                        const std::string& what);

struct RussoResult {
  PPolynomial lhs;  // d/dp P_p(A)
  PPolynomial rhs;  // sum_e P_p(e pivotal for A)
  bool holds() const { return lhs == rhs; }
};

RussoResult russo_check(const FiniteGraph& g, const Event& increasing);

struct InequalityResult {
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

// P(A and B) >= P(A) P(B); reported with lhs = P(A and B), rhs = P(A)P(B).
InequalityResult fkg_check(const FiniteGraph& g, const Event& a,
                           const Event& b, const Rational& p);

using VertexPair = std::pair<Vertex, Vertex>;

// Configurations in which x1<->y1 and x2<->y2 occur on edge-disjoint open
// witness paths.
std::vector<uint8_t> disjoint_connection_table(const FiniteGraph& g,
                                               const VertexPair& pair1,
                                               const VertexPair& pair2);

// P(x1<->y1 o x2<->y2) <= P(x1<->y1) P(x2<->y2).
InequalityResult bk_check_connections(const FiniteGraph& g,
                                      const VertexPair& pair1,
                                      const VertexPair& pair2,
                                      const Rational& p);

// Catalog of exact identity audits.
struct OracleCheck {
  std::string name;
  std::string kind;  // "total", "russo", "fkg", "bk"
  bool passed = false;
  std::string detail;
};

std::vector<OracleCheck> run_identity_catalog();

}  // namespace percolab
