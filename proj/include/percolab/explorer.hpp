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

// Lazy breadth-first exploration of one open cluster, restricted to a
// region, with chemical distances to target sets, arm events, and the
// full-box spanning-cluster census.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "percolab/lattice.hpp"
#include "percolab/region.hpp"
#include "percolab/sampler.hpp"

namespace percolab {

struct Budget {
  int64_t max_volume = 1'000'000;
  int64_t max_intrinsic_radius = 100'000;

  void validate() const;
};

// A set of vertices the exploration measures chemical distance to.
struct TargetSet {
  enum class Kind {
    kVertex,        // {vertex}
    kLinfSphere,    // {y : |y - origin|_inf == n}, i.e. the boundary of B(origin; n)
    kLinfAtLeast,   // {y : |y - origin|_inf >= n}
    kRegion,        // members of region
    kRegionBoundary,  // boundary of region
  };

  Kind kind = Kind::kVertex;
  Vertex vertex;
  int64_t n = 0;
  std::shared_ptr<const Region> region;

  static TargetSet at(const Vertex& v);
  static TargetSet sphere(int64_t n);
  static TargetSet beyond(int64_t n);
  static TargetSet inside(const Region& r);
  static TargetSet boundary_of(const Region& r);

  bool matches(const Vertex& y, const Vertex& origin) const;
};

enum class Truncation {
  kNone,
  kVolume,
  kRadius,
  kCoordinateRange,  // packed vertex keys ran out of bits
};

std::string to_string(Truncation t);

struct ExploreOptions {
  Budget budget;
  std::vector<TargetSet> targets;
  // Stop once every target has a chemical distance.
  bool stop_when_resolved = false;
  // Stop once a vertex at this BFS depth is discovered (<0: never).
  int64_t stop_at_depth = -1;
  bool collect_boundary_hits = false;
  bool keep_members = false;
};

struct ClusterReport {
  Vertex origin;
  std::shared_ptr<const Region> region;
  double p = 0.0;
  // Vertices discovered; equals |C_G(origin)| when `exhausted`.
  int64_t volume = 0;
  // Cluster vertices on the region's boundary, sorted.
  std::vector<Vertex> boundary_hits;
  int64_t extrinsic_radius = 0;
  int64_t intrinsic_radius = 0;
  // Parallel to ExploreOptions::targets.
  std::vector<std::optional<int64_t>> chem_dist;
  Truncation truncated = Truncation::kNone;
  // The whole cluster was visited.
  bool exhausted = false;
  // Discovery order when keep_members is set.
  std::vector<Vertex> members;

  bool is_truncated() const { return truncated != Truncation::kNone; }
};

// BFS over p-open bonds whose endpoints are both admissible in `region`.
// The origin must be contained in the region (a Difference anchor counts);
// other vertices are admissible only under the strict membership test, so the
// anchor exemption applies to the source alone.
ClusterReport explore(const Vertex& origin, const Region& region, double p,
                      const SamplerConfig& cfg, const ExploreOptions& opts);

// d_chem^region(origin, target); nullopt when the cluster is exhausted
// without contact. Throws BudgetExceededError when the budget runs out first.
std::optional<int64_t> chemical_distance(const Vertex& origin,
                                         const TargetSet& target,
                                         const Region& region, double p,
                                         const SamplerConfig& cfg,
                                         const Budget& budget = {});

struct ReachReport {
  // reached[i]: C(origin) has a vertex y with |y - origin|_inf >= radii[i].
  std::vector<bool> reached;
  int64_t volume = 0;
  Truncation truncated = Truncation::kNone;
  bool exhausted = false;
};

// Decides the full-lattice arm events for every radius in one search. The
// search expands the vertex of largest (l_inf, l_1) offset first, so in the
// supercritical phase it reaches far radii without filling the ball. When no
// radius is reached it visits the same cluster a BFS would. Budgets apply as
// in explore(); max_intrinsic_radius is ignored since depths are not tracked.
ReachReport reach_radii(const Vertex& origin, const std::vector<int64_t>& radii,
                        double p, const SamplerConfig& cfg,
                        const Budget& budget = {});

enum class ArmOutcome { kNo, kYes, kTruncated };

// sup{|y - origin|_inf : y in C(origin)} >= n in the full lattice.
ArmOutcome arm_outcome(const Vertex& origin, int64_t n, double p,
                       const SamplerConfig& cfg, const Budget& budget = {});
bool arm_event(const Vertex& origin, int64_t n, double p,
               const SamplerConfig& cfg, const Budget& budget = {});

// The intrinsic radius of C(origin) is at least n.
ArmOutcome intrinsic_arm_outcome(const Vertex& origin, int64_t n, double p,
                                 const SamplerConfig& cfg,
                                 const Budget& budget = {});
bool intrinsic_arm_event(const Vertex& origin, int64_t n, double p,
                         const SamplerConfig& cfg, const Budget& budget = {});

inline constexpr uint64_t kDefaultCensusCap = 20'000'000;

struct SpanningCensus {
  int64_t count = 0;
  // Sizes of the spanning clusters, largest first.
  std::vector<int64_t> sizes;
};

// Union-find over every open bond with both endpoints in B(n); counts the
// clusters touching both faces x(1) = -n and x(1) = n.
SpanningCensus spanning_census(int64_t n, double p, const SamplerConfig& cfg,
                               uint64_t site_cap = kDefaultCensusCap);

}  // namespace percolab
