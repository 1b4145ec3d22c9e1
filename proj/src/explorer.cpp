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

#include "percolab/explorer.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>

#include "absl/container/flat_hash_set.h"

namespace percolab {

void Budget::validate() const {
  if (max_volume < 1 || max_intrinsic_radius < 1) {
    throw ArgumentError("budget limits must be positive");
  }
}

TargetSet TargetSet::at(const Vertex& v) {
  TargetSet t;
  t.kind = Kind::kVertex;
  t.vertex = v;
  return t;
}

TargetSet TargetSet::sphere(int64_t n) {
  TargetSet t;
  t.kind = Kind::kLinfSphere;
  t.n = n;
  return t;
}

TargetSet TargetSet::beyond(int64_t n) {
  TargetSet t;
  t.kind = Kind::kLinfAtLeast;
  t.n = n;
  return t;
}

TargetSet TargetSet::inside(const Region& r) {
  TargetSet t;
  t.kind = Kind::kRegion;
  t.region = std::make_shared<const Region>(r);
  return t;
}

TargetSet TargetSet::boundary_of(const Region& r) {
  TargetSet t;
  t.kind = Kind::kRegionBoundary;
  t.region = std::make_shared<const Region>(r);
  return t;
}

bool TargetSet::matches(const Vertex& y, const Vertex& origin) const {
  switch (kind) {
    case Kind::kVertex:
      return y == vertex;
    case Kind::kLinfSphere:
      return linf_distance(y, origin) == n;
    case Kind::kLinfAtLeast:
      return linf_distance(y, origin) >= n;
    case Kind::kRegion:
      return region->contains(y);
    case Kind::kRegionBoundary:
      return region->on_boundary(y);
  }
  return false;
}

std::string to_string(Truncation t) {
  switch (t) {
    case Truncation::kNone:
      return "none";
    case Truncation::kVolume:
      return "volume";
    case Truncation::kRadius:
      return "radius";
    case Truncation::kCoordinateRange:
      return "coordinate-range";
  }
  return "?";
}

namespace {

// Packs the offset y - origin into one word, `bits` bits per axis.
class KeyPacker {
 public:
  explicit KeyPacker(const Vertex& origin)
      : origin_(origin),
        bits_(std::min(32, 64 / origin.dim())),
        bias_(int64_t{1} << (bits_ - 1)) {}

  bool fits(const Vertex& y) const {
    for (int i = 0; i < y.dim(); ++i) {
      const int64_t off = int64_t{y[i]} - origin_[i];
      if (off <= -bias_ || off >= bias_) return false;
    }
    return true;
  }

  uint64_t key(const Vertex& y) const {
    uint64_t k = 0;
    for (int i = 0; i < y.dim(); ++i) {
      const auto field =
          static_cast<uint64_t>(int64_t{y[i]} - origin_[i] + bias_);
      k |= field << (bits_ * i);
    }
    return k;
  }

 private:
  Vertex origin_;
  int bits_;
  int64_t bias_;
};

struct Frontier {
  Vertex v;
  int64_t depth;
};

}  // namespace

ClusterReport explore(const Vertex& origin, const Region& region, double p,
                      const SamplerConfig& cfg, const ExploreOptions& opts) {
  check_probability(p);
  opts.budget.validate();
  if (origin.dim() != cfg.model.d || region.dim() != cfg.model.d) {
    throw ArgumentError("origin, region and model dimensions differ");
  }
  if (!region.contains(origin)) {
    throw ArgumentError("origin " + origin.to_string() +
                        " is not admissible in " + region.describe());
  }

  ClusterReport rep;
  rep.origin = origin;
  rep.region = std::make_shared<const Region>(region);
  rep.p = p;
  rep.chem_dist.assign(opts.targets.size(), std::nullopt);

  const KeyPacker packer(origin);
  absl::flat_hash_set<uint64_t> seen;
  std::vector<Frontier> queue;
  size_t unresolved = opts.targets.size();
  bool stop = false;

  auto discover = [&](const Vertex& y, int64_t depth) {
    seen.insert(packer.key(y));
    queue.push_back({y, depth});
    ++rep.volume;
    rep.intrinsic_radius = std::max(rep.intrinsic_radius, depth);
    rep.extrinsic_radius =
        std::max(rep.extrinsic_radius, linf_distance(y, origin));
    if (opts.keep_members) rep.members.push_back(y);
    if (opts.collect_boundary_hits && region.on_boundary(y)) {
      rep.boundary_hits.push_back(y);
    }
    for (size_t t = 0; t < opts.targets.size(); ++t) {
      if (!rep.chem_dist[t] && opts.targets[t].matches(y, origin)) {
        rep.chem_dist[t] = depth;
        --unresolved;
      }
    }
    if (opts.stop_when_resolved && unresolved == 0) stop = true;
    if (opts.stop_at_depth >= 0 && depth >= opts.stop_at_depth) stop = true;
  };

  discover(origin, 0);
  size_t head = 0;
  while (!stop && head < queue.size()) {
    const Frontier cur = queue[head++];
    for_each_neighbor(cur.v, cfg.model, [&](const Vertex& w) {
      if (stop) return;
      if (!region.contains_excluding_anchor(w)) return;
      if (!packer.fits(w)) {
        if (open_unchecked(cfg, cur.v, w, p)) {
          rep.truncated = Truncation::kCoordinateRange;
          stop = true;
        }
        return;
      }
      if (seen.contains(packer.key(w))) return;
      if (!open_unchecked(cfg, cur.v, w, p)) return;
      if (cur.depth + 1 > opts.budget.max_intrinsic_radius) {
        rep.truncated = Truncation::kRadius;
        stop = true;
        return;
      }
      if (rep.volume >= opts.budget.max_volume) {
        rep.truncated = Truncation::kVolume;
        stop = true;
        return;
      }
      discover(w, cur.depth + 1);
    });
  }
  rep.exhausted = !stop && head == queue.size();
  std::sort(rep.boundary_hits.begin(), rep.boundary_hits.end());
  return rep;
}

std::optional<int64_t> chemical_distance(const Vertex& origin,
                                         const TargetSet& target,
                                         const Region& region, double p,
                                         const SamplerConfig& cfg,
                                         const Budget& budget) {
  ExploreOptions opts;
  opts.budget = budget;
  opts.targets = {target};
  opts.stop_when_resolved = true;
  ClusterReport rep = explore(origin, region, p, cfg, opts);
  if (rep.chem_dist[0]) return rep.chem_dist[0];
  if (rep.exhausted) return std::nullopt;
  throw BudgetExceededError("exploration from " + origin.to_string() +
                            " hit its " + to_string(rep.truncated) +
                            " budget before resolving the target");
}

ReachReport reach_radii(const Vertex& origin, const std::vector<int64_t>& radii,
                        double p, const SamplerConfig& cfg,
                        const Budget& budget) {
  check_probability(p);
  budget.validate();
  if (origin.dim() != cfg.model.d) {
    throw ArgumentError("origin and model dimensions differ");
  }
  for (int64_t n : radii) {
    if (n < 1) throw ArgumentError("arm distance must be >= 1");
  }
  ReachReport rep;
  rep.reached.assign(radii.size(), false);
  size_t unresolved = radii.size();

  // Max-heap on (l_inf, l_1, discovery index): ties go to the newest vertex.
  struct Item {
    int64_t linf;
    int64_t l1;
    int64_t seq;
    Vertex v;
    bool operator<(const Item& o) const {
      if (linf != o.linf) return linf < o.linf;
      if (l1 != o.l1) return l1 < o.l1;
      return seq < o.seq;
    }
  };
  const KeyPacker packer(origin);
  absl::flat_hash_set<uint64_t> seen;
  std::priority_queue<Item> heap;
  bool stop = false;

  auto discover = [&](const Vertex& y) {
    seen.insert(packer.key(y));
    int64_t linf = 0, l1 = 0;
    for (int i = 0; i < y.dim(); ++i) {
      const int64_t a = std::abs(int64_t{y[i]} - origin[i]);
      linf = std::max(linf, a);
      l1 += a;
    }
    heap.push({linf, l1, rep.volume, y});
    ++rep.volume;
    for (size_t i = 0; i < radii.size(); ++i) {
      if (!rep.reached[i] && linf >= radii[i]) {
        rep.reached[i] = true;
        --unresolved;
      }
    }
    if (!radii.empty() && unresolved == 0) stop = true;
  };

  discover(origin);
  while (!stop && !heap.empty()) {
    const Vertex cur = heap.top().v;
    heap.pop();
    for_each_neighbor(cur, cfg.model, [&](const Vertex& w) {
      if (stop) return;
      if (!packer.fits(w)) {
        if (open_unchecked(cfg, cur, w, p)) {
          rep.truncated = Truncation::kCoordinateRange;
          stop = true;
        }
        return;
      }
      if (seen.contains(packer.key(w))) return;
      if (!open_unchecked(cfg, cur, w, p)) return;
      if (rep.volume >= budget.max_volume) {
        rep.truncated = Truncation::kVolume;
        stop = true;
        return;
      }
      discover(w);
    });
  }
  rep.exhausted = !stop && heap.empty();
  return rep;
}

ArmOutcome arm_outcome(const Vertex& origin, int64_t n, double p,
                       const SamplerConfig& cfg, const Budget& budget) {
  if (n < 1) throw ArgumentError("arm distance must be >= 1");
  const ReachReport rep = reach_radii(origin, {n}, p, cfg, budget);
  if (rep.reached[0]) return ArmOutcome::kYes;
  return rep.exhausted ? ArmOutcome::kNo : ArmOutcome::kTruncated;
}

bool arm_event(const Vertex& origin, int64_t n, double p,
               const SamplerConfig& cfg, const Budget& budget) {
  return arm_outcome(origin, n, p, cfg, budget) == ArmOutcome::kYes;
}

ArmOutcome intrinsic_arm_outcome(const Vertex& origin, int64_t n, double p,
                                 const SamplerConfig& cfg,
                                 const Budget& budget) {
  if (n < 1) throw ArgumentError("intrinsic arm length must be >= 1");
  ExploreOptions opts;
  opts.budget = budget;
  opts.stop_at_depth = n;
  ClusterReport rep =
      explore(origin, Region::full(cfg.model.d), p, cfg, opts);
  if (rep.intrinsic_radius >= n) return ArmOutcome::kYes;
  return rep.exhausted ? ArmOutcome::kNo : ArmOutcome::kTruncated;
}

bool intrinsic_arm_event(const Vertex& origin, int64_t n, double p,
                         const SamplerConfig& cfg, const Budget& budget) {
  return intrinsic_arm_outcome(origin, n, p, cfg, budget) == ArmOutcome::kYes;
}

}  // namespace percolab
