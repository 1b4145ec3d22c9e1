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

// Monte Carlo estimators checked against exact enumeration on tiny d=1 and
// d=2 fixtures. Each check passes when the estimate lies within 4 standard
// errors of the exact value.

#pragma once

#include <cstdint>
#include <vector>

#include "percolab/estimate.hpp"
#include "percolab/oracle.hpp"

namespace percolab {

inline constexpr double kCrosscheckSigmas = 4.0;

std::vector<OracleCheck> run_estimator_crosschecks(int64_t trials,
                                                   uint64_t seed,
                                                   const RunOptions& opts = {});

}  // namespace percolab
