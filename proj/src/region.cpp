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

#include "percolab/region.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace percolab {

VertexSet::VertexSet(std::vector<Vertex> vs) : items_(std::move(vs)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool VertexSet::contains(const Vertex& v) const {
  return std::binary_search(items_.begin(), items_.end(), v);
}

namespace {

Vertex filled(int d, int32_t value) {
  Vertex v(d);
  for (int i = 0; i < d; ++i) v[i] = value;
  return v;
}

}  // namespace

Region Region::full(int d) {
  Region r;
  r.kind_ = Kind::kFull;
  r.dim_ = Vertex(d).dim();
  return r;
}

Region Region::box(const Vertex& center, int32_t radius) {
  Region r = cuboid(center - filled(center.dim(), radius),
                    center + filled(center.dim(), radius));
  r.kind_ = Kind::kBox;
  r.center_ = center;
  r.n_ = radius;
  return r;
}

Region Region::box(int d, int32_t radius) {
  return box(Vertex::origin(d), radius);
}

Region Region::half_space(int d, int axis, int sign, int32_t offset) {
  if (axis < 0 || axis >= d) throw ArgumentError("half-space axis out of range");
  if (sign == 0) throw ArgumentError("half-space sign must be nonzero");
  Region r;
  r.kind_ = Kind::kHalfSpace;
  r.dim_ = Vertex(d).dim();
  r.axis_ = axis;
  r.sign_ = sign > 0 ? 1 : -1;
  r.offset_ = offset;
  return r;
}

Region Region::positive_half_space(int d) { return half_space(d, 0, 1, 0); }

Region Region::half_box(int d, int32_t n) {
  Vertex lo = filled(d, -n);
  lo[0] = 0;
  Region r = cuboid(lo, filled(d, n));
  r.kind_ = Kind::kHalfBox;
  r.n_ = n;
  return r;
}

Region Region::annulus(const Vertex& center, int32_t m, int32_t n) {
  if (m < 0 || m >= n) throw ArgumentError("annulus needs 0 <= m < n");
  Region r = box(center, n);
  r.kind_ = Kind::kAnnulus;
  r.inner_ = m;
  return r;
}

Region Region::rect(int d, int32_t alpha, int32_t n, const Vertex& shift) {
  if (alpha < 1) throw ArgumentError("rect aspect alpha must be >= 1");
  if (shift.dim() != d) throw ArgumentError("rect shift has wrong dim");
  Region r;
  if (n < 0) {
    r = cuboid(shift, shift);
    r.empty_ = true;
  } else {
    Vertex lo = filled(d, -alpha * n);
    Vertex hi = filled(d, alpha * n);
    hi[0] = n;
    r = cuboid(shift + lo, shift + hi);
  }
  r.kind_ = Kind::kRect;
  r.alpha_ = alpha;
  r.n_ = n;
  r.center_ = shift;
  return r;
}

Region Region::rect(int d, int32_t alpha, int32_t n) {
  return rect(d, alpha, n, Vertex::origin(d));
}

Region Region::cuboid(const Vertex& lo, const Vertex& hi) {
  if (lo.dim() != hi.dim()) throw ArgumentError("cuboid corners differ in dim");
  Region r;
  r.kind_ = Kind::kCuboid;
  r.dim_ = lo.dim();
  r.lo_ = lo;
  r.hi_ = hi;
  for (int i = 0; i < lo.dim(); ++i) r.empty_ = r.empty_ || lo[i] > hi[i];
  return r;
}

Region Region::difference(const Region& base, VertexSet removed,
                          std::optional<Vertex> anchor) {
  for (const Vertex& v : removed.items()) {
    if (v.dim() != base.dim()) throw ArgumentError("removed set has wrong dim");
  }
  if (anchor && anchor->dim() != base.dim()) {
    throw ArgumentError("anchor has wrong dim");
  }
  Region r;
  r.kind_ = Kind::kDifference;
  r.dim_ = base.dim();
  r.base_ = std::make_shared<const Region>(base);
  r.removed_ = std::make_shared<const VertexSet>(std::move(removed));
  r.anchor_ = std::move(anchor);
  return r;
}

bool Region::in_cuboid(const Vertex& v) const {
  if (empty_) return false;
  for (int i = 0; i < dim_; ++i) {
    if (v[i] < lo_[i] || v[i] > hi_[i]) return false;
  }
  return true;
}

bool Region::contains_excluding_anchor(const Vertex& v) const {
  if (v.dim() != dim_) return false;
  switch (kind_) {
    case Kind::kFull:
      return true;
    case Kind::kHalfSpace:
      return sign_ > 0 ? v[axis_] >= offset_ : v[axis_] <= offset_;
    case Kind::kAnnulus:
      return in_cuboid(v) && linf_distance(v, center_) > inner_;
    case Kind::kDifference:
      return base_->contains(v) && !removed_->contains(v);
    case Kind::kBox:
    case Kind::kHalfBox:
    case Kind::kRect:
    case Kind::kCuboid:
      return in_cuboid(v);
  }
  return false;
}

bool Region::contains(const Vertex& v) const {
  if (kind_ == Kind::kDifference && anchor_ && v == *anchor_) {
    return base_->contains(v);
  }
  return contains_excluding_anchor(v);
}

bool Region::is_finite() const {
  switch (kind_) {
    case Kind::kFull:
    case Kind::kHalfSpace:
      return false;
    case Kind::kDifference:
      return base_->is_finite();
    default:
      return true;
  }
}

bool Region::is_empty() const {
  switch (kind_) {
    case Kind::kFull:
    case Kind::kHalfSpace:
    case Kind::kAnnulus:
      return false;
    case Kind::kDifference:
      if (base_->is_finite()) return vertices().empty();
      return false;
    default:
      return empty_;
  }
}

bool Region::on_boundary(const Vertex& v) const {
  if (!contains(v)) return false;
  Vertex w = v;
  for (int i = 0; i < dim_; ++i) {
    for (int step : {-1, 1}) {
      w[i] = v[i] + step;
      if (!contains(w)) return true;
    }
    w[i] = v[i];
  }
  return false;
}

std::optional<std::pair<Vertex, Vertex>> Region::bounding_box() const {
  switch (kind_) {
    case Kind::kFull:
    case Kind::kHalfSpace:
      return std::nullopt;
    case Kind::kDifference:
      return base_->bounding_box();
    default:
      return std::make_pair(lo_, hi_);
  }
}

uint64_t Region::bounding_volume() const {
  auto bb = bounding_box();
  if (!bb) return std::numeric_limits<uint64_t>::max();
  if (kind_ != Kind::kDifference && empty_) return 0;
  const auto& [lo, hi] = *bb;
  uint64_t vol = 1;
  for (int i = 0; i < dim_; ++i) {
    if (hi[i] < lo[i]) return 0;
    uint64_t side = static_cast<uint64_t>(int64_t{hi[i]} - lo[i] + 1);
    if (vol > std::numeric_limits<uint64_t>::max() / side) {
      return std::numeric_limits<uint64_t>::max();
    }
    vol *= side;
  }
  return vol;
}

std::vector<Vertex> Region::vertices(uint64_t cap) const {
  if (!is_finite()) {
    throw UnsupportedRegionError("cannot enumerate infinite region " +
                                 describe());
  }
  const uint64_t vol = bounding_volume();
  if (vol > cap) {
    throw ResourceError("region " + describe() + " spans " +
                        std::to_string(vol) + " sites, over the cap of " +
                        std::to_string(cap));
  }
  std::vector<Vertex> out;
  if (vol == 0) return out;
  const auto [lo, hi] = *bounding_box();
  Vertex v = lo;
  while (true) {
    if (contains(v)) out.push_back(v);
    int i = dim_ - 1;
    while (i >= 0 && v[i] == hi[i]) {
      v[i] = lo[i];
      --i;
    }
    if (i < 0) break;
    ++v[i];
  }
  return out;
}

int32_t Region::rect_right_face() const {
  if (kind_ != Kind::kRect) {
    throw UnsupportedRegionError("right face requested of non-rectangle " +
                                 describe());
  }
  return hi_[0];
}

std::string Region::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kFull:
      os << "Z^" << dim_;
      break;
    case Kind::kBox:
      os << "Box(" << center_ << "," << n_ << ")";
      break;
    case Kind::kHalfSpace:
      os << "HalfSpace(axis=" << axis_ << (sign_ > 0 ? ",>=" : ",<=")
         << offset_ << ")";
      break;
    case Kind::kHalfBox:
      os << "HalfBox(" << n_ << ")";
      break;
    case Kind::kAnnulus:
      os << "Annulus(" << center_ << "," << inner_ << "," << n_ << ")";
      break;
    case Kind::kRect:
      os << "Rect(alpha=" << alpha_ << ",n=" << n_ << ",shift=" << center_
         << ")";
      break;
    case Kind::kCuboid:
      os << "Cuboid(" << lo_ << "," << hi_ << ")";
      break;
    case Kind::kDifference:
      os << "Difference(" << base_->describe() << ",|C|=" << removed_->size();
      if (anchor_) os << ",anchor=" << *anchor_;
      os << ")";
      break;
  }
  return os.str();
}

std::vector<Vertex> boundary(const Region& r, uint64_t cap) {
  if (!r.is_finite()) {
    throw UnsupportedRegionError("boundary of infinite region " +
                                 r.describe());
  }
  std::vector<Vertex> out;
  for (const Vertex& v : r.vertices(cap)) {
    if (r.on_boundary(v)) out.push_back(v);
  }
  return out;
}

std::vector<Vertex> partial_boundary(const Region& r, RectSide side,
                                     uint64_t cap) {
  if (r.kind() != Region::Kind::kRect) {
    throw UnsupportedRegionError("partial boundary needs a Rect, got " +
                                 r.describe());
  }
  if (r.is_empty()) return {};
  const int32_t b1 = r.rect_right_face();
  std::vector<Vertex> out;
  for (const Vertex& v : boundary(r, cap)) {
    const bool right = v[0] == b1;
    if (right == (side == RectSide::kRight)) out.push_back(v);
  }
  return out;
}

std::vector<Vertex> relative_boundary(const Region& a, const Region& outer,
                                      uint64_t cap) {
  if (!a.is_finite()) {
    throw UnsupportedRegionError("relative boundary of infinite region " +
                                 a.describe());
  }
  const std::vector<Vertex> members = a.vertices(cap);
  for (const Vertex& v : members) {
    if (!outer.contains(v)) {
      throw ArgumentError(a.describe() + " is not inside " + outer.describe() +
                          ": " + v.to_string());
    }
  }
  std::vector<Vertex> out;
  for (const Vertex& v : members) {
    Vertex w = v;
    bool hit = false;
    for (int i = 0; i < v.dim() && !hit; ++i) {
      for (int step : {-1, 1}) {
        w[i] = v[i] + step;
        if (outer.contains(w) && !a.contains(w)) hit = true;
      }
      w[i] = v[i];
    }
    if (hit) out.push_back(v);
  }
  return out;
}

}  // namespace percolab
