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

// Monte Carlo estimators for the quantities the high-dimensional theory
// constrains. Every estimator is a pure function of its arguments: trial t
// uses sampler stream (seed, opts.first_trial + t) and all aggregation is
// over integer counters, so results are bit-identical for any worker count.
//
// Truncated explorations (budget hit) are never dropped silently; each
// estimator reports how many there were and states how they enter.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "percolab/estimate.hpp"
#include "percolab/lattice.hpp"
#include "percolab/region.hpp"
#include "percolab/scaling.hpp"

namespace percolab {

// One-arm probability pi_p(n). Truncated trials count as failures.
Estimate estimate_pi(double p, int64_t n, int64_t trials,
                     const LatticeModel& model, uint64_t seed,
                     const RunOptions& opts = {});

// pi_p(n) for every n on the grid from one exploration per trial.
TailCurve estimate_pi_curve(double p, const std::vector<int64_t>& n_grid,
                            int64_t trials, const LatticeModel& model,
                            uint64_t seed, const RunOptions& opts = {});

// tau_{region,p}(x, y): y in C_region(x). Truncated trials count as failures.
Estimate estimate_tau(double p, const Vertex& x, const Vertex& y,
                      const Region& region, int64_t trials,
                      const LatticeModel& model, uint64_t seed,
                      const RunOptions& opts = {});

// Coupled tau(x, y_i) for several targets from one exploration per trial.
std::vector<Estimate> estimate_tau_profile(double p, const Vertex& x,
                                           const std::vector<Vertex>& ys,
                                           const Region& region, int64_t trials,
                                           const LatticeModel& model,
                                           uint64_t seed,
                                           const RunOptions& opts = {});

struct ConditionedSamples {
  int64_t trials = 0;
  int64_t accepted = 0;
  int64_t truncated = 0;
  // Trial cap reached before min_accepted.
  bool partial = false;
  std::vector<int64_t> values;
  // values[i] is only known to be exceeded (exploration truncated).
  std::vector<uint8_t> is_lower_bound;
  double acceptance_rate() const {
    return trials ? static_cast<double>(accepted) / trials : 0.0;
  }
};

struct SnTails {
  int64_t n = 0;
  // P(S_n <= lambda n^2 | 0 <-> dB(n)) and P(S_n >= lambda n^2 | ...).
  TailCurve lower;
  TailCurve upper;
  ConditionedSamples samples;  // S_n per accepted trial, trial order
  double median_scaled() const;  // median of S_n / n^2
};

// Conditioning on the arm event is by rejection; runs until min_accepted
// arm trials or max_trials. Trials truncated before reaching dB(n) are
// excluded.
SnTails estimate_Sn_tails(double p, int64_t n,
                          const std::vector<double>& lambda_grid,
                          int64_t min_accepted, const LatticeModel& model,
                          uint64_t seed, const RunOptions& opts = {},
                          int64_t max_trials = 10'000'000);

struct VolumeTail {
  // P(|C_B(n)(0)| <= lambda n^4 | 0 <-> dB(n)).
  TailCurve cdf;
  ConditionedSamples samples;  // |C_B(n)(0)|, truncated ones as lower bounds
};

VolumeTail estimate_volume_tail(double p, int64_t n,
                                const std::vector<double>& lambda_grid,
                                int64_t min_accepted, const LatticeModel& model,
                                uint64_t seed, const RunOptions& opts = {},
                                int64_t max_trials = 10'000'000);

// Survival P(|C(0)| > t) on the grid. The exploration budget is capped at
// max(t_grid), so a volume truncation means |C| > max(t_grid). A radius
// truncation with V vertices found means |C| > V; it counts for t <= V and
// is excluded above.
// Pushed to t at the budget this curve is the only handle on theta(p), the
// density of the infinite cluster, which is not estimated directly.
TailCurve estimate_cluster_tail(double p, const std::vector<int64_t>& t_grid,
                                int64_t trials, const LatticeModel& model,
                                uint64_t seed, const RunOptions& opts = {});

// P(intrinsic radius of C(0) >= n).
Estimate estimate_intrinsic_arm(double p, int64_t n, int64_t trials,
                                const LatticeModel& model, uint64_t seed,
                                const RunOptions& opts = {});

TailCurve estimate_intrinsic_arm_curve(double p,
                                       const std::vector<int64_t>& n_grid,
                                       int64_t trials,
                                       const LatticeModel& model, uint64_t seed,
                                       const RunOptions& opts = {});

struct SpanningEstimate {
  Estimate count;
  // spanning-cluster size -> number of such clusters over all trials
  std::map<int64_t, int64_t> size_histogram;
};

SpanningEstimate estimate_spanning(double p, int64_t n, int64_t trials,
                                   const LatticeModel& model, uint64_t seed,
                                   const RunOptions& opts = {},
                                   uint64_t site_cap = kDefaultCensusCap);

// E_p |X_B(n)|, boundary sites of B(n) reached inside B(n).
Estimate estimate_EXD(double p, int64_t n, int64_t trials,
                      const LatticeModel& model, uint64_t seed,
                      const RunOptions& opts = {});

struct LDeltaEstimate {
  // First n whose E[X_B(n)] is not significantly above delta.
  std::optional<int64_t> value;
  // First n whose upper confidence bound is already <= delta.
  std::optional<int64_t> conservative;
  std::vector<Estimate> exd;  // n = 1, 2, ...
  bool reached() const { return value.has_value(); }
};

// Box-restricted variant of L_delta(p): domains are limited to B(k), which
// bounds the true infimum over all domains from above.
LDeltaEstimate estimate_L_delta(double p, double delta, int64_t n_max,
                                int64_t trials, const LatticeModel& model,
                                uint64_t seed, const RunOptions& opts = {},
                                double z = 1.96);

struct XiEstimate {
  double xi = 0.0;
  double lo = 0.0;
  double hi = 0.0;  // +inf when the slope interval reaches zero
  double arm_exponent = 2.0;
  FitResult fit;
  TailCurve pi;
};

// xi = -1/slope of log(n^k pi_p(n)) against n. Throws
// InsufficientSignalError if some pi(n) is zero or within two standard
// errors of zero.
XiEstimate estimate_xi(double p, const std::vector<int64_t>& n_grid,
                       int64_t trials, const LatticeModel& model,
                       uint64_t seed, const RunOptions& opts = {},
                       std::optional<double> arm_exponent = std::nullopt);

// Mean cluster size; truncated clusters enter with their partial volume and
// a warning is attached when more than 1% of trials truncate.
Estimate estimate_chi(double p, int64_t trials, const LatticeModel& model,
                      uint64_t seed, const RunOptions& opts = {});

}  // namespace percolab
