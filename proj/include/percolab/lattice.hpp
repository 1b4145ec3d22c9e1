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

// Vertices, bonds and adjacency of Z^d and its spread-out variant.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "percolab/errors.hpp"

namespace percolab {

inline constexpr int kMaxDim = 12;

// A site of Z^d. The dimension travels with the value; coordinates past
// dim() are kept at zero so the defaulted comparisons are lexicographic.
class Vertex {
 public:
  Vertex() = default;
  explicit Vertex(int dim);
  Vertex(std::initializer_list<int32_t> coords);
  explicit Vertex(const std::vector<int32_t>& coords);

  static Vertex origin(int dim) { return Vertex(dim); }
  static Vertex unit(int dim, int axis, int32_t scale = 1);

  int dim() const { return dim_; }
  int32_t operator[](int i) const { return x_[i]; }
  int32_t& operator[](int i) { return x_[i]; }

  std::vector<int32_t> coords() const;
  std::string to_string() const;

  Vertex operator+(const Vertex& o) const;
  Vertex operator-(const Vertex& o) const;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;

 private:
  int dim_ = 0;
  std::array<int32_t, kMaxDim> x_{};
};

std::ostream& operator<<(std::ostream& os, const Vertex& v);

int64_t linf_distance(const Vertex& a, const Vertex& b);
int64_t l1_distance(const Vertex& a, const Vertex& b);
int64_t linf_norm(const Vertex& v);

struct LatticeModel {
  enum class Kind { kNearestNeighbor, kSpreadOut };

  int d = 1;
  Kind kind = Kind::kNearestNeighbor;
  int lambda = 0;  // spread-out range; zero for nearest-neighbor

  static LatticeModel nearest_neighbor(int d);
  static LatticeModel spread_out(int d, int lambda);

  // Throws ArgumentError when the fields are inconsistent.
  void validate() const;

  int64_t degree() const;
  bool adjacent(const Vertex& a, const Vertex& b) const;
  std::string name() const;

  friend bool operator==(const LatticeModel&, const LatticeModel&) = default;
};

// Unordered bond, stored with a < b lexicographically.
class Edge {
 public:
  Edge() = default;
  // Canonicalizes the pair; does not check adjacency.
  Edge(const Vertex& u, const Vertex& v);

  // Canonicalizes and checks the pair is a bond of `model`.
  static Edge checked(const Vertex& u, const Vertex& v,
                      const LatticeModel& model);

  const Vertex& a() const { return a_; }
  const Vertex& b() const { return b_; }
  bool valid_for(const LatticeModel& model) const;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;

 private:
  Vertex a_;
  Vertex b_;
};

// Calls f(neighbor) for each neighbor of v in the order used by every
// exploration: axis-major with the negative step first (nearest-neighbor),
// or lexicographic over the offset cube (spread-out).
template <class F>
void for_each_neighbor(const Vertex& v, const LatticeModel& model, F&& f) {
  const int d = v.dim();
  if (model.kind == LatticeModel::Kind::kNearestNeighbor) {
    Vertex w = v;
    for (int i = 0; i < d; ++i) {
      w[i] = v[i] - 1;
      f(static_cast<const Vertex&>(w));
      w[i] = v[i] + 1;
      f(static_cast<const Vertex&>(w));
      w[i] = v[i];
    }
    return;
  }
  const int L = model.lambda;
  std::array<int32_t, kMaxDim> off{};
  for (int i = 0; i < d; ++i) off[i] = -L;
  Vertex w = v;
  while (true) {
    bool zero = true;
    for (int i = 0; i < d; ++i) {
      w[i] = v[i] + off[i];
      zero = zero && off[i] == 0;
    }
    if (!zero) f(static_cast<const Vertex&>(w));
    int i = d - 1;
    while (i >= 0 && off[i] == L) {
      off[i] = -L;
      --i;
    }
    if (i < 0) break;
    ++off[i];
  }
}

std::vector<Vertex> neighbors(const Vertex& v, const LatticeModel& model);

}  // namespace percolab
