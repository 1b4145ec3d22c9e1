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

// Counter-based edge variates. Every bond of every trial carries a fixed
// Uniform(0,1) value
//
//   u(seed, trial, e) = (SipHash-2-4_{k0=seed, k1=trial}(bytes(e)) >> 11) * 2^-53
//
// where bytes(e) is d, then the coordinates of the canonical endpoints a < b,
// each written as a little-endian signed 32-bit integer. The bond is p-open
// iff u < p, so the open set grows monotonically with p inside one trial and
// no lattice state is ever stored.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "percolab/lattice.hpp"

namespace percolab {

// SipHash-2-4 with a 128-bit key split as (k0, k1), little-endian words.
uint64_t siphash24(uint64_t k0, uint64_t k1, std::span<const uint8_t> msg);

// Test hook used by fault-injection fixtures; kNone in production.
enum class SamplerFault {
  kNone,
  kSkewed,  // returns u^2 instead of u
};

struct SamplerConfig {
  uint64_t seed = 0;
  uint64_t trial = 0;
  LatticeModel model;
  SamplerFault fault = SamplerFault::kNone;
};

inline constexpr size_t kMaxEdgeBytes = 4 + 2 * 4 * kMaxDim;

// Writes the wire encoding of a canonical edge; returns the byte count.
size_t encode_edge(const Edge& e, std::span<uint8_t, kMaxEdgeBytes> out);

// Canonicalizes e; throws ArgumentError if it is not a bond of cfg.model.
double uniform(const SamplerConfig& cfg, const Edge& e);

// Throws ArgumentError unless 0 <= p <= 1.
bool is_open(const SamplerConfig& cfg, const Edge& e, double p);

// Hot-path variants for callers that already hold a valid bond of the
// model; u and v may come in either order.
double uniform_unchecked(const SamplerConfig& cfg, const Vertex& u,
                         const Vertex& v);
inline bool open_unchecked(const SamplerConfig& cfg, const Vertex& u,
                           const Vertex& v, double p) {
  return uniform_unchecked(cfg, u, v) < p;
}

void check_probability(double p);

}  // namespace percolab
