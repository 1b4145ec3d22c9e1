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

// Exponent and rate fits, the scaling-collapse score, and p_c bisection.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "percolab/estimate.hpp"
#include "percolab/lattice.hpp"

namespace percolab {

struct FitPoint {
  double x = 0.0;
  double y = 0.0;
  double std_error = 0.0;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_lo = 0.0;
  double slope_hi = 0.0;
  int64_t points_used = 0;
};

struct FitOptions {
  int bootstrap = 200;
  uint64_t seed = 0x5ca1ab1eULL;
  double level = 0.95;
};

// Weighted least squares of log y on log x. Weights are 1/var(log y) from the
// per-point standard errors (uniform when all are zero); the slope interval
// comes from refitting Gaussian perturbations of y within its error.
FitResult loglog_fit(std::span<const FitPoint> points,
                     const FitOptions& opts = {});

// Same, with log y regressed on x; -slope is the exponential decay rate.
FitResult exp_rate_fit(std::span<const FitPoint> points,
                       const FitOptions& opts = {});

// Points (abscissa, mean, stderr) of a curve, skipping nonpositive means.
std::vector<FitPoint> curve_points(const TailCurve& curve);

// Exponent of the critical one-arm law n^-kappa used as the prefactor in
// the correlation-length regression and the p_c drift statistic: 2 in high
// dimensions, 0 on Z^1 where p_c = 1 and the critical arm probability is 1.
double default_arm_exponent(const LatticeModel& model);

struct CollapseOptions {
  // Reference critical curve; n^-arm_exponent when absent.
  std::optional<TailCurve> reference;
  double arm_exponent = 2.0;
  int grid_points = 24;
};

struct CollapseResult {
  double dispersion = 0.0;
  int curves_used = 0;
  double u_lo = 0.0;
  double u_hi = 0.0;
};

// Rescales each subcritical curve pi_p(n) to (n sqrt(pc - p), pi_p(n) /
// pi_pc(n)), interpolates piecewise-linearly in log-log space onto a common
// grid over the shared abscissa range, and returns the mean across the grid
// of the standard deviation of log-values between curves. Curves with
// p >= pc are skipped.
CollapseResult scaling_collapse(const std::map<double, TailCurve>& curves,
                                double pc, const CollapseOptions& opts = {});

struct PcProbe {
  double p = 0.0;
  int64_t hits_n1 = 0;
  int64_t hits_n2 = 0;
  double drift = 0.0;
  double drift_se = 0.0;
  bool subcritical = false;
};

struct PcOptions {
  double lo = 0.0;
  double hi = 1.0;
  // One-sided significance for "decays faster than n^-kappa".
  double z = 2.0;
  std::optional<double> arm_exponent;
  RunOptions run;
};

struct PcEstimate {
  double lo = 0.0;
  double hi = 1.0;
  double estimate = 0.5;
  int rounds = 0;
  std::vector<PcProbe> probes;
};

// Bisection on p with D(p) = log[n2^k pi(n2)] - log[n1^k pi(n1)] from coupled
// trials: D + z se < 0 classifies p as subcritical. Stops when the bracket is
// no wider than `tolerance`.
PcEstimate estimate_pc(const LatticeModel& model, int64_t n1, int64_t n2,
                       double tolerance, int64_t trials, uint64_t seed,
                       const PcOptions& opts = {});

// One drift probe at p (exposed for diagnostics and tests).
PcProbe pc_probe(const LatticeModel& model, int64_t n1, int64_t n2, double p,
                 int64_t trials, uint64_t seed, double arm_exponent, double z,
                 const RunOptions& run);

}  // namespace percolab
