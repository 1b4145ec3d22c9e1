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

#include "percolab/lattice.hpp"

#include <cstdlib>
#include <sstream>

namespace percolab {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw ArgumentError("dimension must lie in [1, " +
                        std::to_string(kMaxDim) + "], got " +
                        std::to_string(dim));
  }
}

}  // namespace

Vertex::Vertex(int dim) : dim_(dim) { check_dim(dim); }

Vertex::Vertex(std::initializer_list<int32_t> coords)
    : dim_(static_cast<int>(coords.size())) {
  check_dim(dim_);
  int i = 0;
  for (int32_t c : coords) x_[i++] = c;
}

Vertex::Vertex(const std::vector<int32_t>& coords)
    : dim_(static_cast<int>(coords.size())) {
  check_dim(dim_);
  for (int i = 0; i < dim_; ++i) x_[i] = coords[i];
}

Vertex Vertex::unit(int dim, int axis, int32_t scale) {
  Vertex v(dim);
  if (axis < 0 || axis >= dim) throw ArgumentError("axis out of range");
  v[axis] = scale;
  return v;
}

std::vector<int32_t> Vertex::coords() const {
  return std::vector<int32_t>(x_.begin(), x_.begin() + dim_);
}

std::string Vertex::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

Vertex Vertex::operator+(const Vertex& o) const {
  if (o.dim_ != dim_) throw ArgumentError("dimension mismatch");
  Vertex r = *this;
  for (int i = 0; i < dim_; ++i) r.x_[i] += o.x_[i];
  return r;
}

Vertex Vertex::operator-(const Vertex& o) const {
  if (o.dim_ != dim_) throw ArgumentError("dimension mismatch");
  Vertex r = *this;
  for (int i = 0; i < dim_; ++i) r.x_[i] -= o.x_[i];
  return r;
}

std::ostream& operator<<(std::ostream& os, const Vertex& v) {
  os << '(';
  for (int i = 0; i < v.dim(); ++i) os << (i ? "," : "") << v[i];
  return os << ')';
}

int64_t linf_distance(const Vertex& a, const Vertex& b) {
  int64_t m = 0;
  for (int i = 0; i < a.dim(); ++i) {
    m = std::max<int64_t>(m, std::llabs(int64_t{a[i]} - b[i]));
  }
  return m;
}

int64_t l1_distance(const Vertex& a, const Vertex& b) {
  int64_t s = 0;
  for (int i = 0; i < a.dim(); ++i) s += std::llabs(int64_t{a[i]} - b[i]);
  return s;
}

int64_t linf_norm(const Vertex& v) {
  return linf_distance(v, Vertex::origin(v.dim()));
}

LatticeModel LatticeModel::nearest_neighbor(int d) {
  LatticeModel m{d, Kind::kNearestNeighbor, 0};
  m.validate();
  return m;
}

LatticeModel LatticeModel::spread_out(int d, int lambda) {
  LatticeModel m{d, Kind::kSpreadOut, lambda};
  m.validate();
  return m;
}

void LatticeModel::validate() const {
  check_dim(d);
  if (kind == Kind::kSpreadOut && lambda < 1) {
    throw ArgumentError("spread-out model needs lambda >= 1");
  }
  if (kind == Kind::kNearestNeighbor && lambda != 0) {
    throw ArgumentError("lambda is only meaningful for the spread-out model");
  }
}

int64_t LatticeModel::degree() const {
  if (kind == Kind::kNearestNeighbor) return 2 * int64_t{d};
  int64_t side = 2 * int64_t{lambda} + 1;
  int64_t cube = 1;
  for (int i = 0; i < d; ++i) cube *= side;
  return cube - 1;
}

bool LatticeModel::adjacent(const Vertex& a, const Vertex& b) const {
  if (a.dim() != d || b.dim() != d || a == b) return false;
  if (kind == Kind::kNearestNeighbor) return l1_distance(a, b) == 1;
  return linf_distance(a, b) <= lambda;
}

std::string LatticeModel::name() const {
  if (kind == Kind::kNearestNeighbor) {
    return "nearest-neighbor(d=" + std::to_string(d) + ")";
  }
  return "spread-out(d=" + std::to_string(d) +
         ",lambda=" + std::to_string(lambda) + ")";
}

Edge::Edge(const Vertex& u, const Vertex& v) {
  if (u.dim() != v.dim()) throw ArgumentError("edge endpoints differ in dim");
  if (v < u) {
    a_ = v;
    b_ = u;
  } else {
    a_ = u;
    b_ = v;
  }
}

Edge Edge::checked(const Vertex& u, const Vertex& v,
                   const LatticeModel& model) {
  Edge e(u, v);
  if (!e.valid_for(model)) {
    throw ArgumentError("not a bond of " + model.name() + ": " +
                        u.to_string() + " - " + v.to_string());
  }
  return e;
}

bool Edge::valid_for(const LatticeModel& model) const {
  return model.adjacent(a_, b_);
}

std::vector<Vertex> neighbors(const Vertex& v, const LatticeModel& model) {
  if (v.dim() != model.d) throw ArgumentError("vertex/model dim mismatch");
  std::vector<Vertex> out;
  out.reserve(static_cast<size_t>(model.degree()));
  for_each_neighbor(v, model, [&](const Vertex& w) { out.push_back(w); });
  return out;
}

}  // namespace percolab
