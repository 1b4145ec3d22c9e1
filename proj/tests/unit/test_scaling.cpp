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

#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "doctest.h"
#include "percolab/errors.hpp"
#include "percolab/scaling.hpp"

using namespace percolab;

namespace {

std::vector<FitPoint> power_law(double c, double a, std::vector<double> xs,
                                double rel_err = 0.0) {
  std::vector<FitPoint> out;
  for (double x : xs) {
    const double y = c * std::pow(x, a);
    out.push_back({x, y, rel_err * y});
  }
  return out;
}

TailCurve curve(const std::vector<double>& xs, auto&& f) {
  TailCurve c;
  c.estimand = "pi";
  c.abscissae = xs;
  for (double x : xs) c.estimates.push_back(Estimate::exact(f(x), 1000));
  return c;
}

}  // namespace

TEST_SUITE("scaling") {

TEST_CASE("exact power law") {
  const auto pts = power_law(3.0, -2.0, {2, 4, 8, 16, 32});
  const FitResult r = loglog_fit(pts);
  CHECK(r.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(std::exp(r.intercept) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(r.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.slope_lo == doctest::Approx(r.slope).epsilon(1e-12));
  CHECK(r.slope_hi == doctest::Approx(r.slope).epsilon(1e-12));
  CHECK(r.points_used == 5);
}

TEST_CASE("noisy power law interval covers the slope") {
  const auto pts = power_law(0.5, 1.5, {1, 2, 3, 5, 8, 13}, 0.05);
  const FitResult r = loglog_fit(pts);
  CHECK(r.slope_lo < 1.5);
  CHECK(r.slope_hi > 1.5);
  CHECK(r.slope_lo <= r.slope);
  CHECK(r.slope <= r.slope_hi);
  // Same input, same bootstrap stream.
  const FitResult again = loglog_fit(pts);
  CHECK(again.slope_lo == r.slope_lo);
  CHECK(again.slope_hi == r.slope_hi);
}

TEST_CASE("constant data") {
  std::vector<FitPoint> pts;
  for (double x : {1.0, 2.0, 4.0}) pts.push_back({x, 0.7, 0.0});
  const FitResult r = loglog_fit(pts);
  CHECK(r.slope == doctest::Approx(0.0));
  CHECK(r.r_squared == 1.0);
}

TEST_CASE("exponential rate") {
  std::vector<FitPoint> pts;
  for (int n = 1; n <= 10; ++n) pts.push_back({double(n), std::pow(0.5, n), 0.0});
  const FitResult e = exp_rate_fit(pts);
  CHECK(-e.slope == doctest::Approx(std::log(2.0)));
  CHECK(e.r_squared == doctest::Approx(1.0));
  CHECK(loglog_fit(pts).r_squared < e.r_squared);
}

TEST_CASE("fit input errors") {
  CHECK_THROWS_AS(loglog_fit(std::vector<FitPoint>{{1, 1, 0}, {2, 1, 0}}),
                  ArgumentError);
  CHECK_THROWS_AS(loglog_fit(std::vector<FitPoint>{{1, 1, 0}, {2, 0, 0}, {3, 1, 0}}),
                  ArgumentError);
  CHECK_THROWS_AS(loglog_fit(std::vector<FitPoint>{{1, 1, 0}, {-2, 1, 0}, {3, 1, 0}}),
                  ArgumentError);
  // Not resolved from zero at two standard errors.
  CHECK_THROWS_AS(exp_rate_fit(std::vector<FitPoint>{{1, 1, 0}, {2, 0.1, 0.06}, {3, 1, 0}}),
                  ArgumentError);
  FitOptions bad;
  bad.level = 1.0;
  CHECK_THROWS_AS(loglog_fit(power_law(1, 1, {1, 2, 3}), bad), ArgumentError);
}

TEST_CASE("curve points skip empty estimates") {
  TailCurve c;
  c.abscissae = {1, 2, 3};
  c.estimates = {Estimate::exact(0.5), Estimate::exact(0.0), Estimate::exact(0.1)};
  const auto pts = curve_points(c);
  REQUIRE(pts.size() == 2);
  CHECK(pts[1].x == 3);
}

TEST_CASE("arm exponent by dimension") {
  CHECK(default_arm_exponent(LatticeModel::nearest_neighbor(1)) == 0.0);
  CHECK(default_arm_exponent(LatticeModel::nearest_neighbor(7)) == 2.0);
}

TEST_CASE("synthetic scaling collapse") {
  const double pc = 0.2;
  const std::vector<double> ns = {2, 4, 8, 16, 32, 64, 128};
  auto family = [&](double shift) {
    std::map<double, TailCurve> out;
    for (double p : {0.12, 0.16, 0.18, 0.19}) {
      out[p] = curve(ns, [&](double n) {
        const double u = n * std::sqrt(pc - p);
        return std::pow(n, -2.0) * std::pow(1 + u, -2.0) * shift;
      });
    }
    return out;
  };
  const CollapseResult r = scaling_collapse(family(1.0), pc);
  CHECK(r.curves_used == 4);
  CHECK(r.dispersion < 0.05);
  const CollapseResult scaled = scaling_collapse(family(7.5), pc);
  CHECK(scaled.dispersion == doctest::Approx(r.dispersion).epsilon(1e-9));
  const CollapseResult wrong = scaling_collapse(family(1.0), 0.25);
  CHECK(wrong.dispersion > r.dispersion);
  // Supercritical curves are ignored.
  auto with_super = family(1.0);
  with_super[0.3] = curve(ns, [](double) { return 0.5; });
  CHECK(scaling_collapse(with_super, pc).curves_used == 4);
}

TEST_CASE("collapse needs overlapping curves") {
  const double pc = 0.5;
  std::map<double, TailCurve> far;
  far[0.49] = curve({2, 4}, [](double n) { return 1 / n; });
  far[0.1] = curve({100, 200}, [](double n) { return 1 / n; });
  CHECK_THROWS_AS(scaling_collapse(far, pc), InsufficientSignalError);
  std::map<double, TailCurve> one;
  one[0.4] = curve({2, 4, 8}, [](double n) { return 1 / n; });
  CHECK_THROWS_AS(scaling_collapse(one, pc), ArgumentError);
}

TEST_CASE("critical point on the line") {
  const auto line = LatticeModel::nearest_neighbor(1);
  const PcEstimate r = estimate_pc(line, 4, 16, 0.1, 20'000, 5);
  CHECK(r.hi == 1.0);
  CHECK(r.hi - r.lo <= 0.1);
  CHECK(r.rounds <= 4);
  for (const auto& probe : r.probes) CHECK(probe.subcritical == (probe.p < 1.0));
  CHECK_THROWS_AS(estimate_pc(line, 2, 16, 0.1, 100, 5), ArgumentError);
  CHECK_THROWS_AS(estimate_pc(line, 4, 6, 0.1, 100, 5), ArgumentError);
}

TEST_CASE("drift statistic") {
  const auto m = LatticeModel::nearest_neighbor(1);
  const PcProbe sure = pc_probe(m, 4, 8, 1.0, 100, 1, 0.0, 2.0, {});
  CHECK(sure.hits_n1 == 100);
  CHECK(sure.hits_n2 == 100);
  CHECK(sure.drift == 0.0);
  CHECK_FALSE(sure.subcritical);
  const PcProbe none = pc_probe(m, 4, 8, 0.0, 100, 1, 0.0, 2.0, {});
  CHECK(none.drift == -std::numeric_limits<double>::infinity());
  CHECK(none.subcritical);
}

}  // TEST_SUITE
