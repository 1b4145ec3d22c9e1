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

#include "percolab/crosscheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "percolab/estimators.hpp"

namespace percolab {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

OracleCheck compare(std::string name, const Estimate& e, double exact) {
  OracleCheck c;
  c.name = std::move(name);
  c.kind = "estimator";
  const double diff = std::abs(e.mean - exact);
  c.passed = e.std_error > 0 ? diff <= kCrosscheckSigmas * e.std_error
                             : diff <= 1e-12;
  c.detail = "estimate " + fmt(e.mean) + " +- " + fmt(e.std_error) +
             ", exact " + fmt(exact);
  if (e.std_error > 0) c.detail += ", z = " + fmt(diff / e.std_error);
  return c;
}

std::vector<Vertex> line_sites(std::initializer_list<int32_t> xs) {
  std::vector<Vertex> out;
  for (int32_t x : xs) out.push_back(Vertex{x});
  return out;
}

// Nearest-neighbor edges of Z^2 inside the l1 ball of radius r.
FiniteGraph l1_ball_graph(int32_t r) {
  std::vector<Edge> edges;
  for (int32_t x = -r; x <= r; ++x) {
    for (int32_t y = -r; y <= r; ++y) {
      if (std::abs(x) + std::abs(y) > r) continue;
      if (std::abs(x + 1) + std::abs(y) <= r) {
        edges.emplace_back(Vertex{x, y}, Vertex{x + 1, y});
      }
      if (std::abs(x) + std::abs(y + 1) <= r) {
        edges.emplace_back(Vertex{x, y}, Vertex{x, y + 1});
      }
    }
  }
  return FiniteGraph::from_edges(std::move(edges));
}

std::vector<Vertex> face(const Region& box, int axis, int32_t value) {
  std::vector<Vertex> out;
  for (const Vertex& v : box.vertices()) {
    if (v[axis] == value) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<OracleCheck> run_estimator_crosschecks(int64_t trials,
                                                   uint64_t seed,
                                                   const RunOptions& opts) {
  const double p = 0.5;
  const auto d1 = LatticeModel::nearest_neighbor(1);
  const auto d2 = LatticeModel::nearest_neighbor(2);
  const Vertex o1 = Vertex::origin(1);
  const Vertex o2 = Vertex::origin(2);
  std::vector<OracleCheck> out;

  {
    const auto g = FiniteGraph::from_region(Region::box(1, 2), d1);
    const double exact =
        event_polynomial(g, reaches_event(g, o1, line_sites({-2, 2})))
            .evaluate(p);
    out.push_back(compare("pi d=1 n=2",
                          estimate_pi(p, 2, trials, d1, seed, opts), exact));
  }
  {
    const Region b1 = Region::box(2, 1);
    const auto g = FiniteGraph::from_region(b1, d2);
    const double exact =
        event_polynomial(g, reaches_event(g, o2, boundary(b1))).evaluate(p);
    out.push_back(compare("pi d=2 n=1",
                          estimate_pi(p, 1, trials, d2, seed, opts), exact));
  }
  {
    const Region sq = Region::cuboid(Vertex{0, 0}, Vertex{1, 1});
    const auto g = FiniteGraph::from_region(sq, d2);
    const double exact =
        event_polynomial(g, connection_event(g, o2, Vertex{1, 1})).evaluate(p);
    out.push_back(compare(
        "tau unit square (0,0)-(1,1)",
        estimate_tau(p, o2, Vertex{1, 1}, sq, trials, d2, seed, opts), exact));
  }
  {
    const auto g = FiniteGraph::from_region(
        Region::cuboid(Vertex{0}, Vertex{2}), d1);
    const double exact =
        event_polynomial(g, connection_event(g, o1, Vertex{2})).evaluate(p);
    out.push_back(compare("tau d=1 0-2",
                          estimate_tau(p, o1, Vertex{2}, Region::full(1),
                                       trials, d1, seed, opts),
                          exact));
  }
  {
    const Region b1 = Region::box(1, 1);
    const auto g = FiniteGraph::from_region(b1, d1);
    const double exact =
        oracle_expectation(g, hits_statistic(g, o1, boundary(b1))).evaluate(p);
    out.push_back(compare("X_B(1) d=1",
                          estimate_EXD(p, 1, trials, d1, seed, opts), exact));
  }
  {
    const Region b1 = Region::box(2, 1);
    const auto g = FiniteGraph::from_region(b1, d2);
    const double exact =
        oracle_expectation(g, hits_statistic(g, o2, boundary(b1))).evaluate(p);
    out.push_back(compare("X_B(1) d=2",
                          estimate_EXD(p, 1, trials, d2, seed, opts), exact));
  }
  for (const auto& model : {d1, d2}) {
    const Region b1 = Region::box(model.d, 1);
    const auto g = FiniteGraph::from_region(b1, model);
    const double exact =
        oracle_expectation(g, crossing_count_statistic(g, face(b1, 0, -1),
                                                       face(b1, 0, 1)))
            .evaluate(p);
    out.push_back(compare(
        "spanning count d=" + std::to_string(model.d) + " n=1",
        estimate_spanning(p, 1, trials, model, seed, opts).count, exact));
  }
  out.push_back(compare("chi d=1 closed form (1+p)/(1-p)",
                        estimate_chi(p, trials, d1, seed, opts),
                        (1 + p) / (1 - p)));
  {
    const std::vector<int64_t> ts = {1, 2, 3};
    const TailCurve c = estimate_cluster_tail(p, ts, trials, d1, seed, opts);
    for (size_t i = 0; i < ts.size(); ++i) {
      const auto g = FiniteGraph::from_region(
          Region::box(1, static_cast<int32_t>(ts[i])), d1);
      const Statistic size = cluster_size_statistic(g, o1);
      const int64_t t = ts[i];
      const double exact =
          oracle_expectation(g, [size, t](Config w) -> int64_t {
            return size(w) > t ? 1 : 0;
          }).evaluate(p);
      out.push_back(compare("cluster tail d=1 t=" + std::to_string(t),
                            c.estimates[i], exact));
    }
  }
  {
    const auto g = FiniteGraph::from_region(Region::box(1, 2), d1);
    const Statistic r = intrinsic_radius_statistic(g, o1);
    const double exact = oracle_expectation(g, [r](Config w) -> int64_t {
                           return r(w) >= 2 ? 1 : 0;
                         }).evaluate(p);
    out.push_back(compare("intrinsic arm d=1 n=2",
                          estimate_intrinsic_arm(p, 2, trials, d1, seed, opts),
                          exact));
  }
  {
    const auto g = l1_ball_graph(2);
    const Statistic r = intrinsic_radius_statistic(g, o2);
    const double exact = oracle_expectation(g, [r](Config w) -> int64_t {
                           return r(w) >= 2 ? 1 : 0;
                         }).evaluate(p);
    out.push_back(compare("intrinsic arm d=2 n=2",
                          estimate_intrinsic_arm(p, 2, trials, d2, seed, opts),
                          exact));
  }
  {
    // Spread-out range 2 on a line: S_2 is 1 exactly when 0 has a direct
    // bond to -2 or 2.
    const auto so = LatticeModel::spread_out(1, 2);
    const auto g = FiniteGraph::from_region(Region::box(1, 2), so);
    const Event arm = reaches_event(g, o1, line_sites({-2, 2}));
    const Event left = edge_open_event(
        g, static_cast<int>(std::find(g.edges.begin(), g.edges.end(),
                                      Edge(Vertex{-2}, o1)) -
                            g.edges.begin()));
    const Event right = edge_open_event(
        g, static_cast<int>(std::find(g.edges.begin(), g.edges.end(),
                                      Edge(o1, Vertex{2})) -
                            g.edges.begin()));
    const Event direct = complement(both(complement(left), complement(right)));
    const double p_arm = event_polynomial(g, arm).evaluate(p);
    const double p_direct = event_polynomial(g, direct).evaluate(p);
    const SnTails s =
        estimate_Sn_tails(p, 2, {0.25, 0.5}, trials, so, seed, opts, 4 * trials);
    out.push_back(compare("S_n lower tail spread-out d=1 n=2 lambda=1/4",
                          s.lower.estimates[0], p_direct / p_arm));
    out.push_back(compare(
        "S_n acceptance rate spread-out d=1 n=2",
        Estimate::proportion(s.samples.accepted, s.samples.trials), p_arm));
  }
  {
    const Region b1 = Region::box(2, 1);
    const auto g = FiniteGraph::from_region(b1, d2);
    const Event arm = reaches_event(g, o2, boundary(b1));
    const Statistic size = cluster_size_statistic(g, o2);
    const double p_arm = event_polynomial(g, arm).evaluate(p);
    const std::vector<double> lambdas = {2, 4, 8};
    const VolumeTail v =
        estimate_volume_tail(p, 1, lambdas, trials, d2, seed, opts, 4 * trials);
    for (size_t i = 0; i < lambdas.size(); ++i) {
      const auto t = static_cast<int64_t>(lambdas[i]);
      const double joint =
          event_polynomial(g, [arm, size, t](Config w) {
            return arm(w) && size(w) <= t;
          }).evaluate(p);
      out.push_back(compare(
          "volume lower tail d=2 n=1 lambda=" + std::to_string(t),
          v.cdf.estimates[i], joint / p_arm));
    }
  }
  {
    const LDeltaEstimate l =
        estimate_L_delta(p, 0.25, 8, trials, d1, seed, opts);
    OracleCheck c;
    c.name = "L_delta d=1 delta=0.25";
    c.kind = "estimator";
    c.passed = l.value && *l.value == 3;
    c.detail = "estimate " + (l.value ? std::to_string(*l.value) : "none") +
               ", exact 3";
    out.push_back(c);
  }
  {
    OracleCheck c;
    c.name = "xi d=1 closed form 1/log 2";
    c.kind = "estimator";
    const double exact = 1.0 / std::log(2.0);
    try {
      const XiEstimate x = estimate_xi(p, {4, 5, 6, 7, 8, 9, 10, 11, 12},
                                       trials, d1, seed, opts);
      const double width = x.hi - x.lo;
      c.passed = std::abs(x.xi - exact) <= 3 * width;
      c.detail = "estimate " + fmt(x.xi) + " [" + fmt(x.lo) + ", " +
                 fmt(x.hi) + "], exact " + fmt(exact);
    } catch (const Error& e) {
      c.passed = false;
      c.detail = e.what();
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace percolab
