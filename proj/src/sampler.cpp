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

#include "percolab/sampler.hpp"

#include <array>
#include <cmath>
#include <string>

namespace percolab {

namespace {

inline uint64_t rotl(uint64_t x, int b) { return (x << b) | (x >> (64 - b)); }

struct SipState {
  uint64_t v0, v1, v2, v3;

  void round() {
    v0 += v1;
    v1 = rotl(v1, 13);
    v1 ^= v0;
    v0 = rotl(v0, 32);
    v2 += v3;
    v3 = rotl(v3, 16);
    v3 ^= v2;
    v0 += v3;
    v3 = rotl(v3, 21);
    v3 ^= v0;
    v2 += v1;
    v1 = rotl(v1, 17);
    v1 ^= v2;
    v2 = rotl(v2, 32);
  }
};

inline uint64_t load_le64(const uint8_t* p) {
  uint64_t x = 0;
  for (int i = 7; i >= 0; --i) x = (x << 8) | p[i];
  return x;
}

inline void store_le32(uint8_t* p, int32_t value) {
  const auto u = static_cast<uint32_t>(value);
  p[0] = static_cast<uint8_t>(u);
  p[1] = static_cast<uint8_t>(u >> 8);
  p[2] = static_cast<uint8_t>(u >> 16);
  p[3] = static_cast<uint8_t>(u >> 24);
}

size_t encode_pair(const Vertex& a, const Vertex& b, uint8_t* out) {
  const int d = a.dim();
  store_le32(out, d);
  size_t pos = 4;
  for (int i = 0; i < d; ++i, pos += 4) store_le32(out + pos, a[i]);
  for (int i = 0; i < d; ++i, pos += 4) store_le32(out + pos, b[i]);
  return pos;
}

inline double to_unit(uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double apply_fault(double u, SamplerFault fault) {
  return fault == SamplerFault::kSkewed ? u * u : u;
}

}  // namespace

uint64_t siphash24(uint64_t k0, uint64_t k1, std::span<const uint8_t> msg) {
  SipState s{k0 ^ 0x736f6d6570736575ULL, k1 ^ 0x646f72616e646f6dULL,
             k0 ^ 0x6c7967656e657261ULL, k1 ^ 0x7465646279746573ULL};
  const size_t n = msg.size();
  const uint8_t* p = msg.data();
  const size_t full = n & ~size_t{7};
  for (size_t i = 0; i < full; i += 8) {
    const uint64_t m = load_le64(p + i);
    s.v3 ^= m;
    s.round();
    s.round();
    s.v0 ^= m;
  }
  uint64_t last = static_cast<uint64_t>(n & 0xff) << 56;
  for (size_t i = 0; i < (n & 7); ++i) {
    last |= static_cast<uint64_t>(p[full + i]) << (8 * i);
  }
  s.v3 ^= last;
  s.round();
  s.round();
  s.v0 ^= last;
  s.v2 ^= 0xff;
  for (int i = 0; i < 4; ++i) s.round();
  return s.v0 ^ s.v1 ^ s.v2 ^ s.v3;
}

size_t encode_edge(const Edge& e, std::span<uint8_t, kMaxEdgeBytes> out) {
  return encode_pair(e.a(), e.b(), out.data());
}

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ArgumentError("probability must lie in [0, 1], got " +
                        std::to_string(p));
  }
}

double uniform_unchecked(const SamplerConfig& cfg, const Vertex& u,
                         const Vertex& v) {
  std::array<uint8_t, kMaxEdgeBytes> buf;
  const size_t len =
      v < u ? encode_pair(v, u, buf.data()) : encode_pair(u, v, buf.data());
  const double x =
      to_unit(siphash24(cfg.seed, cfg.trial, std::span(buf.data(), len)));
  return cfg.fault == SamplerFault::kNone ? x : apply_fault(x, cfg.fault);
}

double uniform(const SamplerConfig& cfg, const Edge& e) {
  const Edge c(e.a(), e.b());
  if (c.a().dim() != cfg.model.d || !c.valid_for(cfg.model)) {
    throw ArgumentError("edge " + c.a().to_string() + "-" + c.b().to_string() +
                        " is not a bond of " + cfg.model.name());
  }
  return uniform_unchecked(cfg, c.a(), c.b());
}

bool is_open(const SamplerConfig& cfg, const Edge& e, double p) {
  check_probability(p);
  return uniform(cfg, e) < p;
}

}  // namespace percolab
