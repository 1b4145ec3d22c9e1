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

// Closed descriptions of the sublattices used throughout: boxes, half-spaces,
// annuli, the aspect-ratio rectangles, and set differences with an optional
// anchor. Membership is O(d); nothing is materialized unless asked.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "percolab/lattice.hpp"

namespace percolab {

// Immutable sorted set of vertices.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<Vertex> vs);

  bool contains(const Vertex& v) const;
  size_t size() const { return items_.size(); }
  const std::vector<Vertex>& items() const { return items_; }

 private:
  std::vector<Vertex> items_;
};

inline constexpr uint64_t kDefaultEnumerationCap = 100'000'000;

class Region {
 public:
  enum class Kind {
    kFull,
    kBox,
    kHalfSpace,
    kHalfBox,
    kAnnulus,
    kRect,
    kCuboid,
    kDifference,
  };

  static Region full(int d);
  // [c - n, c + n]^d.
  static Region box(const Vertex& center, int32_t radius);
  static Region box(int d, int32_t radius);
  // sign > 0: x(axis) >= offset; sign < 0: x(axis) <= offset.
  static Region half_space(int d, int axis, int sign, int32_t offset);
  // Z^d_+ = {x : x(1) >= 0}.
  static Region positive_half_space(int d);
  // B(n) intersected with Z^d_+.
  static Region half_box(int d, int32_t n);
  // B(c; n) \ B(c; m), 0 <= m < n.
  static Region annulus(const Vertex& center, int32_t m, int32_t n);
  // shift + [-alpha n, n] x [-alpha n, alpha n]^{d-1}; empty for n < 0.
  static Region rect(int d, int32_t alpha, int32_t n, const Vertex& shift);
  static Region rect(int d, int32_t alpha, int32_t n);
  // Axis-aligned product of intervals [lo_i, hi_i].
  static Region cuboid(const Vertex& lo, const Vertex& hi);
  // base minus `removed`; `anchor`, if given, is exempt from the removal.
  static Region difference(const Region& base, VertexSet removed,
                           std::optional<Vertex> anchor = std::nullopt);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  bool contains(const Vertex& v) const;
  // Same as contains() but without the anchor exemption.
  bool contains_excluding_anchor(const Vertex& v) const;
  const std::optional<Vertex>& anchor() const { return anchor_; }

  bool is_finite() const;
  bool is_empty() const;

  // v in the region with a nearest-neighbor outside it.
  bool on_boundary(const Vertex& v) const;

  // Smallest cuboid holding the region, for finite regions.
  std::optional<std::pair<Vertex, Vertex>> bounding_box() const;
  uint64_t bounding_volume() const;

  // All member vertices in lexicographic order. Throws ResourceError if the
  // bounding box holds more than `cap` sites.
  std::vector<Vertex> vertices(uint64_t cap = kDefaultEnumerationCap) const;

  // Rect parameters; only valid when kind() == kRect.
  int32_t rect_alpha() const { return alpha_; }
  int32_t rect_n() const { return n_; }
  // b_1, the largest first coordinate of a Rect.
  int32_t rect_right_face() const;

  std::string describe() const;

 private:
  Region() = default;
  bool in_cuboid(const Vertex& v) const;

  Kind kind_ = Kind::kFull;
  int dim_ = 1;
  bool empty_ = false;
  // Cuboid-like shapes (box, half-box, rect, cuboid) and the annulus' outer box.
  Vertex lo_;
  Vertex hi_;
  // Half-space.
  int axis_ = 0;
  int sign_ = 1;
  int32_t offset_ = 0;
  // Annulus.
  Vertex center_;
  int32_t inner_ = 0;
  // Rect.
  int32_t alpha_ = 0;
  int32_t n_ = 0;
  // Difference.
  std::shared_ptr<const Region> base_;
  std::shared_ptr<const VertexSet> removed_;
  std::optional<Vertex> anchor_;
};

// The vertex boundary {x in r : some y with |y - x|_1 = 1 lies outside r},
// always with nearest-neighbor adjacency. Sorted lexicographically.
std::vector<Vertex> boundary(const Region& r,
                             uint64_t cap = kDefaultEnumerationCap);

enum class RectSide { kRight, kWest };

// Right face {x in r : x(1) = b_1} of a Rect, or its complement in the
// boundary.
std::vector<Vertex> partial_boundary(const Region& r, RectSide side,
                                     uint64_t cap = kDefaultEnumerationCap);

// {x in a : some nearest neighbor y lies in outer \ a}. Requires a to be a
// finite subset of outer.
std::vector<Vertex> relative_boundary(const Region& a, const Region& outer,
                                      uint64_t cap = kDefaultEnumerationCap);

}  // namespace percolab
