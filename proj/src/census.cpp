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

#include <algorithm>
#include <numeric>

#include "percolab/explorer.hpp"

namespace percolab {

namespace {

class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), uint32_t{0});
  }

  uint32_t find(uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  uint32_t size(uint32_t root) const { return size_[root]; }

 private:
  std::vector<uint32_t> parent_;
  std::vector<uint32_t> size_;
};

// Offsets delta > 0 in lexicographic order: one orientation per bond.
std::vector<Vertex> forward_offsets(const LatticeModel& model) {
  std::vector<Vertex> out;
  const Vertex zero = Vertex::origin(model.d);
  for_each_neighbor(zero, model, [&](const Vertex& w) {
    if (zero < w) out.push_back(w);
  });
  return out;
}

}  // namespace

SpanningCensus spanning_census(int64_t n, double p, const SamplerConfig& cfg,
                               uint64_t site_cap) {
  check_probability(p);
  if (n < 1) throw ArgumentError("spanning census needs n >= 1");
  const int d = cfg.model.d;
  const uint64_t side = static_cast<uint64_t>(2 * n + 1);
  uint64_t sites = 1;
  for (int i = 0; i < d; ++i) {
    if (sites > site_cap / side) {
      throw ResourceError("B(" + std::to_string(n) + ") in d=" +
                          std::to_string(d) +
                          " exceeds the census site cap of " +
                          std::to_string(site_cap));
    }
    sites *= side;
  }
  if (sites > site_cap) {
    throw ResourceError("census needs " + std::to_string(sites) +
                        " sites, over the cap of " + std::to_string(site_cap));
  }

  std::vector<int64_t> stride(d);
  {
    int64_t s = 1;
    for (int i = d - 1; i >= 0; --i) {
      stride[i] = s;
      s *= static_cast<int64_t>(side);
    }
  }
  const std::vector<Vertex> offsets = forward_offsets(cfg.model);
  std::vector<int64_t> offset_index(offsets.size());
  for (size_t k = 0; k < offsets.size(); ++k) {
    int64_t idx = 0;
    for (int i = 0; i < d; ++i) idx += offsets[k][i] * stride[i];
    offset_index[k] = idx;
  }

  UnionFind uf(sites);
  Vertex x(d);
  for (int i = 0; i < d; ++i) x[i] = static_cast<int32_t>(-n);
  for (uint64_t idx = 0; idx < sites; ++idx) {
    for (size_t k = 0; k < offsets.size(); ++k) {
      const Vertex& off = offsets[k];
      bool inside = true;
      for (int i = 0; i < d && inside; ++i) {
        const int64_t c = int64_t{x[i]} + off[i];
        inside = c >= -n && c <= n;
      }
      if (!inside) continue;
      if (open_unchecked(cfg, x, x + off, p)) {
        uf.unite(static_cast<uint32_t>(idx),
                 static_cast<uint32_t>(static_cast<int64_t>(idx) +
                                       offset_index[k]));
      }
    }
    for (int i = d - 1; i >= 0; --i) {
      if (x[i] < n) {
        ++x[i];
        break;
      }
      x[i] = static_cast<int32_t>(-n);
    }
  }

  // Face x(1) = -n is the first block of indices, x(1) = n the last.
  const uint64_t face = sites / side;
  std::vector<uint8_t> left(sites, 0);
  for (uint64_t idx = 0; idx < face; ++idx) left[uf.find(idx)] = 1;
  std::vector<uint32_t> roots;
  for (uint64_t idx = sites - face; idx < sites; ++idx) {
    const uint32_t r = uf.find(static_cast<uint32_t>(idx));
    if (left[r] == 1) {
      left[r] = 2;
      roots.push_back(r);
    }
  }
  SpanningCensus out;
  out.count = static_cast<int64_t>(roots.size());
  for (uint32_t r : roots) out.sizes.push_back(uf.size(r));
  std::sort(out.sizes.begin(), out.sizes.end(), std::greater<>());
  return out;
}

}  // namespace percolab
