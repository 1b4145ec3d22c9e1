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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "percolab/explorer.hpp"
#include "percolab/sampler.hpp"

namespace percolab {

// Execution knobs shared by every estimator. None of them changes results
// except `budget` (truncation) and `fault` (test hook).
struct RunOptions {
  int workers = 1;
  Budget budget;
  SamplerFault fault = SamplerFault::kNone;
  // Trials use sampler streams first_trial, first_trial + 1, ...
  uint64_t first_trial = 0;
};

// Monte Carlo mean with its standard error (sample std / sqrt(n), n - 1 in
// the variance). For conditioned estimands `accepted` is the denominator.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  int64_t trials = 0;
  int64_t accepted = 0;
  int64_t truncated = 0;
  std::string warning;

  // k successes out of n.
  static Estimate proportion(int64_t k, int64_t n);
  // From the sum and sum of squares of n integer observations.
  static Estimate from_moments(__int128 sum, __int128 sum_sq, int64_t n);
  // Exact value, zero error (used by synthetic fixtures).
  static Estimate exact(double value, int64_t n = 0);

  double lower(double z) const { return mean - z * std_error; }
  double upper(double z) const { return mean + z * std_error; }
};

struct TailCurve {
  std::string estimand;
  std::vector<double> abscissae;
  std::vector<Estimate> estimates;

  // Throws ArgumentError unless abscissae increase strictly and match
  // estimates one to one.
  void validate() const;
  size_t size() const { return abscissae.size(); }
};

}  // namespace percolab
