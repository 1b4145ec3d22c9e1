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

// Deterministic parallel trial loop. Trial t always sees the sampler stream
// (seed, t); the index range is cut into contiguous chunks, one per worker,
// and partial accumulators are merged in chunk order, so results do not
// depend on the worker count.

#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace percolab {

template <class Acc, class F>
Acc run_trials(uint64_t first, uint64_t count, int workers, F&& per_trial) {
  const uint64_t w = std::clamp<uint64_t>(workers < 1 ? 1 : workers, 1,
                                          std::max<uint64_t>(count, 1));
  std::vector<Acc> parts(w);
  std::vector<std::exception_ptr> errors(w);
  auto body = [&](uint64_t k) {
    const uint64_t lo = first + count * k / w;
    const uint64_t hi = first + count * (k + 1) / w;
    try {
      for (uint64_t t = lo; t < hi; ++t) per_trial(t, parts[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };
  if (w == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (uint64_t k = 0; k < w; ++k) pool.emplace_back(body, k);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Acc total = std::move(parts[0]);
  for (uint64_t k = 1; k < w; ++k) total.merge(parts[k]);
  return total;
}

}  // namespace percolab
