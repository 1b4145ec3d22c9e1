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

#include "percolab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "percolab/explorer.hpp"
#include "percolab/trials.hpp"

namespace percolab {

Estimate Estimate::proportion(int64_t k, int64_t n) {
  Estimate e;
  e.trials = n;
  e.accepted = n;
  if (n <= 0) return e;
  const long double m = static_cast<long double>(k) / n;
  e.mean = static_cast<double>(m);
  if (n > 1) {
    const long double var =
        static_cast<long double>(k) * (n - k) / (static_cast<long double>(n) * (n - 1));
    e.std_error = static_cast<double>(std::sqrt(var / n));
  }
  return e;
}

Estimate Estimate::from_moments(__int128 sum, __int128 sum_sq, int64_t n) {
  Estimate e;
  e.trials = n;
  e.accepted = n;
  if (n <= 0) return e;
  const auto s = static_cast<long double>(sum);
  const auto ss = static_cast<long double>(sum_sq);
  e.mean = static_cast<double>(s / n);
  if (n > 1) {
    const long double var = std::max<long double>(0, (ss - s * s / n) / (n - 1));
    e.std_error = static_cast<double>(std::sqrt(var / n));
  }
  return e;
}

Estimate Estimate::exact(double value, int64_t n) {
  Estimate e;
  e.mean = value;
  e.trials = n;
  e.accepted = n;
  return e;
}

void TailCurve::validate() const {
  if (abscissae.size() != estimates.size()) {
    throw ArgumentError("tail curve '" + estimand +
                        "' has mismatched abscissae and estimates");
  }
  for (size_t i = 1; i < abscissae.size(); ++i) {
    if (!(abscissae[i] > abscissae[i - 1])) {
      throw ArgumentError("tail curve '" + estimand +
                          "' abscissae must increase strictly");
    }
  }
}

double SnTails::median_scaled() const {
  if (samples.values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::vector<int64_t> v = samples.values;
  const size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double med = static_cast<double>(v[mid]);
  if (v.size() % 2 == 0) {
    const int64_t below = *std::max_element(v.begin(), v.begin() + mid);
    med = 0.5 * (med + static_cast<double>(below));
  }
  return med / (static_cast<double>(n) * static_cast<double>(n));
}

namespace {

SamplerConfig sampler_for(const LatticeModel& model, uint64_t seed,
                          uint64_t trial, const RunOptions& opts) {
  SamplerConfig cfg;
  cfg.seed = seed;
  cfg.trial = trial;
  cfg.model = model;
  cfg.fault = opts.fault;
  return cfg;
}

void check_trials(int64_t trials) {
  if (trials < 1) throw ArgumentError("trials must be >= 1");
}

void check_grid(const std::vector<int64_t>& grid, const char* what,
                int64_t minimum) {
  if (grid.empty()) throw ArgumentError(std::string(what) + " grid is empty");
  for (size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < minimum || (i > 0 && grid[i] <= grid[i - 1])) {
      throw ArgumentError(std::string(what) +
                          " grid must increase strictly and start at >= " +
                          std::to_string(minimum));
    }
  }
}

// Success / truncation counters per grid point.
struct GridCounts {
  std::vector<int64_t> hits;
  std::vector<int64_t> denom;
  std::vector<int64_t> truncated;

  void ensure(size_t k) {
    if (hits.empty()) {
      hits.assign(k, 0);
      denom.assign(k, 0);
      truncated.assign(k, 0);
    }
  }
  void merge(const GridCounts& o) {
    if (o.hits.empty()) return;
    ensure(o.hits.size());
    for (size_t i = 0; i < hits.size(); ++i) {
      hits[i] += o.hits[i];
      denom[i] += o.denom[i];
      truncated[i] += o.truncated[i];
    }
  }
};

struct Moments {
  __int128 sum = 0;
  __int128 sum_sq = 0;
  int64_t n = 0;
  int64_t truncated = 0;

  void add(int64_t x) {
    sum += x;
    sum_sq += static_cast<__int128>(x) * x;
    ++n;
  }
  void merge(const Moments& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    n += o.n;
    truncated += o.truncated;
  }
};

TailCurve curve_from_counts(const std::string& estimand,
                            const std::vector<double>& abscissae,
                            const GridCounts& c, int64_t trials) {
  TailCurve out;
  out.estimand = estimand;
  out.abscissae = abscissae;
  for (size_t i = 0; i < abscissae.size(); ++i) {
    Estimate e = Estimate::proportion(c.hits[i], c.denom[i]);
    e.trials = trials;
    e.truncated = c.truncated[i];
    out.estimates.push_back(e);
  }
  return out;
}

std::vector<double> to_double(const std::vector<int64_t>& v) {
  return std::vector<double>(v.begin(), v.end());
}

enum class SampleKind { kExact, kLowerBound, kUnknown };

struct CondEvent {
  uint64_t trial;
  SampleKind kind;
  int64_t value;
};

struct CondAcc {
  std::vector<CondEvent> events;
  void merge(const CondAcc& o) {
    events.insert(events.end(), o.events.begin(), o.events.end());
  }
};

// Rejection loop in fixed batches; the result is cut right after the
// min_accepted-th acceptance so it is independent of batch and worker count.
template <class F>
ConditionedSamples run_conditioned(int64_t min_accepted, int64_t max_trials,
                                   const RunOptions& opts, F&& per_trial) {
  if (min_accepted < 1) throw ArgumentError("min_accepted must be >= 1");
  check_trials(max_trials);
  constexpr int64_t kBatch = 4096;
  std::vector<CondEvent> events;
  int64_t accepted = 0;
  int64_t done = 0;
  while (accepted < min_accepted && done < max_trials) {
    const int64_t batch = std::min(kBatch, max_trials - done);
    CondAcc part = run_trials<CondAcc>(
        opts.first_trial + done, batch, opts.workers,
        [&](uint64_t t, CondAcc& acc) {
          std::optional<CondEvent> ev = per_trial(t);
          if (ev) acc.events.push_back(*ev);
        });
    for (const CondEvent& ev : part.events) {
      if (ev.kind != SampleKind::kUnknown) ++accepted;
    }
    events.insert(events.end(), part.events.begin(), part.events.end());
    done += batch;
  }

  ConditionedSamples out;
  out.trials = done;
  out.partial = accepted < min_accepted;
  int64_t kept = 0;
  for (const CondEvent& ev : events) {
    if (!out.partial && kept == min_accepted) break;
    if (ev.kind == SampleKind::kUnknown) {
      ++out.truncated;
      continue;
    }
    ++kept;
    out.values.push_back(ev.value);
    out.is_lower_bound.push_back(ev.kind == SampleKind::kLowerBound ? 1 : 0);
    if (ev.kind == SampleKind::kLowerBound) ++out.truncated;
    if (!out.partial && kept == min_accepted) {
      out.trials = static_cast<int64_t>(ev.trial - opts.first_trial) + 1;
    }
  }
  out.accepted = kept;
  // Unknown-outcome trials after the cut are not part of the sample.
  if (!out.partial) {
    out.truncated = 0;
    for (const CondEvent& ev : events) {
      if (ev.trial - opts.first_trial >= static_cast<uint64_t>(out.trials)) break;
      if (ev.kind != SampleKind::kExact) ++out.truncated;
    }
  }
  return out;
}

// Conditioned CDF/survival from samples; lower-bound samples enter only
// where the comparison is already decided.
Estimate conditioned_fraction(const ConditionedSamples& s, double threshold,
                              bool at_most) {
  int64_t hits = 0;
  int64_t denom = 0;
  for (size_t i = 0; i < s.values.size(); ++i) {
    const auto v = static_cast<double>(s.values[i]);
    if (s.is_lower_bound[i]) {
      // true value > v
      if (at_most) {
        if (threshold <= v) ++denom;  // known: value > threshold
      } else {
        ++denom;
        if (v + 1 >= threshold) ++hits;  // known: value >= threshold
      }
      continue;
    }
    ++denom;
    if (at_most ? v <= threshold : v >= threshold) ++hits;
  }
  Estimate e = Estimate::proportion(hits, denom);
  e.trials = s.trials;
  e.accepted = denom;
  e.truncated = s.truncated;
  return e;
}

}  // namespace

TailCurve estimate_pi_curve(double p, const std::vector<int64_t>& n_grid,
                            int64_t trials, const LatticeModel& model,
                            uint64_t seed, const RunOptions& opts) {
  check_probability(p);
  check_trials(trials);
  check_grid(n_grid, "arm distance", 1);
  const Vertex origin = Vertex::origin(model.d);
  GridCounts c = run_trials<GridCounts>(
      opts.first_trial, trials, opts.workers, [&](uint64_t t, GridCounts& acc) {
        acc.ensure(n_grid.size());
        const ReachReport rep = reach_radii(
            origin, n_grid, p, sampler_for(model, seed, t, opts), opts.budget);
        for (size_t i = 0; i < n_grid.size(); ++i) {
          ++acc.denom[i];
          if (rep.reached[i]) {
            ++acc.hits[i];
          } else if (!rep.exhausted) {
            ++acc.truncated[i];
          }
        }
      });
  return curve_from_counts("pi", to_double(n_grid), c, trials);
}

Estimate estimate_pi(double p, int64_t n, int64_t trials,
                     const LatticeModel& model, uint64_t seed,
                     const RunOptions& opts) {
  return estimate_pi_curve(p, {n}, trials, model, seed, opts).estimates[0];
}

std::vector<Estimate> estimate_tau_profile(double p, const Vertex& x,
                                           const std::vector<Vertex>& ys,
                                           const Region& region, int64_t trials,
                                           const LatticeModel& model,
                                           uint64_t seed,
                                           const RunOptions& opts) {
  check_probability(p);
  check_trials(trials);
  if (ys.empty()) throw ArgumentError("no target vertices");
  for (const Vertex& y : ys) {
    if (!region.contains(y)) {
      throw ArgumentError("target " + y.to_string() + " not admissible in " +
                          region.describe());
    }
  }
  ExploreOptions eo;
  eo.budget = opts.budget;
  for (const Vertex& y : ys) eo.targets.push_back(TargetSet::at(y));
  eo.stop_when_resolved = true;
  GridCounts c = run_trials<GridCounts>(
      opts.first_trial, trials, opts.workers, [&](uint64_t t, GridCounts& acc) {
        acc.ensure(ys.size());
        const ClusterReport rep =
            explore(x, region, p, sampler_for(model, seed, t, opts), eo);
        for (size_t i = 0; i < ys.size(); ++i) {
          ++acc.denom[i];
          if (rep.chem_dist[i]) {
            ++acc.hits[i];
          } else if (!rep.exhausted) {
            ++acc.truncated[i];
          }
        }
      });
  std::vector<Estimate> out;
  for (size_t i = 0; i < ys.size(); ++i) {
    Estimate e = Estimate::proportion(c.hits[i], c.denom[i]);
    e.truncated = c.truncated[i];
    out.push_back(e);
  }
  return out;
}

Estimate estimate_tau(double p, const Vertex& x, const Vertex& y,
                      const Region& region, int64_t trials,
                      const LatticeModel& model, uint64_t seed,
                      const RunOptions& opts) {
  return estimate_tau_profile(p, x, {y}, region, trials, model, seed, opts)[0];
}

SnTails estimate_Sn_tails(double p, int64_t n,
                          const std::vector<double>& lambda_grid,
                          int64_t min_accepted, const LatticeModel& model,
                          uint64_t seed, const RunOptions& opts,
                          int64_t max_trials) {
  check_probability(p);
  if (n < 2) throw ArgumentError("S_n tails need n >= 2");
  if (lambda_grid.empty()) throw ArgumentError("lambda grid is empty");
  ExploreOptions eo;
  eo.budget = opts.budget;
  eo.targets = {TargetSet::sphere(n)};
  eo.stop_when_resolved = true;
  const Region box = Region::box(model.d, static_cast<int32_t>(n));
  const Vertex origin = Vertex::origin(model.d);

  SnTails out;
  out.n = n;
  out.samples = run_conditioned(
      min_accepted, max_trials, opts,
      [&](uint64_t t) -> std::optional<CondEvent> {
        const ClusterReport rep =
            explore(origin, box, p, sampler_for(model, seed, t, opts), eo);
        if (rep.chem_dist[0]) {
          return CondEvent{t, SampleKind::kExact, *rep.chem_dist[0]};
        }
        if (rep.exhausted) return std::nullopt;
        return CondEvent{t, SampleKind::kUnknown, 0};
      });
  out.lower.estimand = "Sn_lower_cdf";
  out.upper.estimand = "Sn_upper_survival";
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  for (double lam : lambda_grid) {
    out.lower.abscissae.push_back(lam);
    out.upper.abscissae.push_back(lam);
    out.lower.estimates.push_back(
        conditioned_fraction(out.samples, lam * n2, true));
    out.upper.estimates.push_back(
        conditioned_fraction(out.samples, lam * n2, false));
  }
  out.lower.validate();
  return out;
}

VolumeTail estimate_volume_tail(double p, int64_t n,
                                const std::vector<double>& lambda_grid,
                                int64_t min_accepted, const LatticeModel& model,
                                uint64_t seed, const RunOptions& opts,
                                int64_t max_trials) {
  check_probability(p);
  if (n < 1) throw ArgumentError("volume tail needs n >= 1");
  if (lambda_grid.empty()) throw ArgumentError("lambda grid is empty");
  ExploreOptions eo;
  eo.budget = opts.budget;
  eo.targets = {TargetSet::sphere(n)};
  const Region box = Region::box(model.d, static_cast<int32_t>(n));
  const Vertex origin = Vertex::origin(model.d);

  VolumeTail out;
  out.samples = run_conditioned(
      min_accepted, max_trials, opts,
      [&](uint64_t t) -> std::optional<CondEvent> {
        const ClusterReport rep =
            explore(origin, box, p, sampler_for(model, seed, t, opts), eo);
        if (rep.chem_dist[0]) {
          return CondEvent{t,
                           rep.exhausted ? SampleKind::kExact
                                         : SampleKind::kLowerBound,
                           rep.volume};
        }
        if (rep.exhausted) return std::nullopt;
        return CondEvent{t, SampleKind::kUnknown, 0};
      });
  out.cdf.estimand = "volume_lower_cdf";
  const double n4 = std::pow(static_cast<double>(n), 4);
  for (double lam : lambda_grid) {
    out.cdf.abscissae.push_back(lam);
    out.cdf.estimates.push_back(
        conditioned_fraction(out.samples, lam * n4, true));
  }
  out.cdf.validate();
  return out;
}

TailCurve estimate_cluster_tail(double p, const std::vector<int64_t>& t_grid,
                                int64_t trials, const LatticeModel& model,
                                uint64_t seed, const RunOptions& opts) {
  check_probability(p);
  check_trials(trials);
  check_grid(t_grid, "size", 0);
  const int64_t t_max = t_grid.back();
  if (t_max > opts.budget.max_volume) {
    throw ArgumentError("largest t exceeds the exploration volume budget");
  }
  ExploreOptions eo;
  eo.budget = opts.budget;
  eo.budget.max_volume = std::max<int64_t>(t_max, 1);
  const Region full = Region::full(model.d);
  const Vertex origin = Vertex::origin(model.d);
  GridCounts c = run_trials<GridCounts>(
      opts.first_trial, trials, opts.workers, [&](uint64_t t, GridCounts& acc) {
        acc.ensure(t_grid.size());
        const ClusterReport rep =
            explore(origin, full, p, sampler_for(model, seed, t, opts), eo);
        for (size_t i = 0; i < t_grid.size(); ++i) {
          if (rep.exhausted) {
            ++acc.denom[i];
            if (rep.volume > t_grid[i]) ++acc.hits[i];
          } else if (t_grid[i] <= rep.volume) {
            ++acc.denom[i];
            ++acc.hits[i];
            ++acc.truncated[i];
          } else {
            ++acc.truncated[i];
          }
        }
      });
  return curve_from_counts("cluster_tail", to_double(t_grid), c, trials);
}

TailCurve estimate_intrinsic_arm_curve(double p,
                                       const std::vector<int64_t>& n_grid,
                                       int64_t trials,
                                       const LatticeModel& model, uint64_t seed,
                                       const RunOptions& opts) {
  check_probability(p);
  check_trials(trials);
  check_grid(n_grid, "intrinsic arm length", 1);
  ExploreOptions eo;
  eo.budget = opts.budget;
  eo.stop_at_depth = n_grid.back();
  const Region full = Region::full(model.d);
  const Vertex origin = Vertex::origin(model.d);
  GridCounts c = run_trials<GridCounts>(
      opts.first_trial, trials, opts.workers, [&](uint64_t t, GridCounts& acc) {
        acc.ensure(n_grid.size());
        const ClusterReport rep =
            explore(origin, full, p, sampler_for(model, seed, t, opts), eo);
        for (size_t i = 0; i < n_grid.size(); ++i) {
          ++acc.denom[i];
          if (rep.intrinsic_radius >= n_grid[i]) {
            ++acc.hits[i];
          } else if (!rep.exhausted) {
            ++acc.truncated[i];
          }
        }
      });
  return curve_from_counts("intrinsic_arm", to_double(n_grid), c, trials);
}

Estimate estimate_intrinsic_arm(double p, int64_t n, int64_t trials,
                                const LatticeModel& model, uint64_t seed,
                                const RunOptions& opts) {
  return estimate_intrinsic_arm_curve(p, {n}, trials, model, seed, opts)
      .estimates[0];
}

namespace {

struct SpanningAcc {
  Moments m;
  std::map<int64_t, int64_t> hist;
  void merge(const SpanningAcc& o) {
    m.merge(o.m);
    for (const auto& [k, v] : o.hist) hist[k] += v;
  }
};

}  // namespace

SpanningEstimate estimate_spanning(double p, int64_t n, int64_t trials,
                                   const LatticeModel& model, uint64_t seed,
                                   const RunOptions& opts, uint64_t site_cap) {
  check_probability(p);
  check_trials(trials);
  SpanningAcc acc = run_trials<SpanningAcc>(
      opts.first_trial, trials, opts.workers, [&](uint64_t t, SpanningAcc& a) {
        const SpanningCensus c =
            spanning_census(n, p, sampler_for(model, seed, t, opts), site_cap);
        a.m.add(c.count);
        for (int64_t s : c.sizes) ++a.hist[s];
      });
  SpanningEstimate out;
  out.count = Estimate::from_moments(acc.m.sum, acc.m.sum_sq, acc.m.n);
  out.size_histogram = std::move(acc.hist);
  return out;
}

Estimate estimate_EXD(double p, int64_t n, int64_t trials,
                      const LatticeModel& model, uint64_t seed,
                      const RunOptions& opts) {
  check_probability(p);
  check_trials(trials);
  if (n < 1) throw ArgumentError("X_B(n) needs n >= 1");
  ExploreOptions eo;
  eo.budget = opts.budget;
  eo.collect_boundary_hits = true;
  const Region box = Region::box(model.d, static_cast<int32_t>(n));
  const Vertex origin = Vertex::origin(model.d);
  Moments m = run_trials<Moments>(
      opts.first_trial, trials, opts.workers, [&](uint64_t t, Moments& acc) {
        const ClusterReport rep =
            explore(origin, box, p, sampler_for(model, seed, t, opts), eo);
        acc.add(static_cast<int64_t>(rep.boundary_hits.size()));
        if (rep.is_truncated()) ++acc.truncated;
      });
  Estimate e = Estimate::from_moments(m.sum, m.sum_sq, m.n);
  e.truncated = m.truncated;
  return e;
}

LDeltaEstimate estimate_L_delta(double p, double delta, int64_t n_max,
                                int64_t trials, const LatticeModel& model,
                                uint64_t seed, const RunOptions& opts,
                                double z) {
  if (!(delta > 0)) throw ArgumentError("delta must be positive");
  if (n_max < 1) throw ArgumentError("n_max must be >= 1");
  LDeltaEstimate out;
  for (int64_t n = 1; n <= n_max; ++n) {
    const Estimate e = estimate_EXD(p, n, trials, model, seed, opts);
    out.exd.push_back(e);
    if (!out.value && e.lower(z) <= delta) out.value = n;
    if (!out.conservative && e.upper(z) <= delta) {
      out.conservative = n;
      break;
    }
  }
  return out;
}

XiEstimate estimate_xi(double p, const std::vector<int64_t>& n_grid,
                       int64_t trials, const LatticeModel& model,
                       uint64_t seed, const RunOptions& opts,
                       std::optional<double> arm_exponent) {
  check_grid(n_grid, "arm distance", 1);
  if (n_grid.size() < 3 || n_grid.back() < 3 * n_grid.front()) {
    throw ArgumentError(
        "xi needs at least 3 grid points spanning a factor of 3");
  }
  XiEstimate out;
  out.arm_exponent = arm_exponent.value_or(default_arm_exponent(model));
  out.pi = estimate_pi_curve(p, n_grid, trials, model, seed, opts);
  std::vector<FitPoint> pts;
  for (size_t i = 0; i < n_grid.size(); ++i) {
    const Estimate& e = out.pi.estimates[i];
    const double scale =
        std::pow(static_cast<double>(n_grid[i]), out.arm_exponent);
    if (e.mean <= 0 || e.mean - 2 * e.std_error <= 0) {
      throw InsufficientSignalError(
          "pi(" + std::to_string(n_grid[i]) + ") = " + std::to_string(e.mean) +
          " is not resolved from zero; use smaller n or more trials");
    }
    pts.push_back({static_cast<double>(n_grid[i]), scale * e.mean,
                   scale * e.std_error});
  }
  out.fit = exp_rate_fit(pts);
  if (out.fit.slope >= 0) {
    throw InsufficientSignalError(
        "n^k pi(n) does not decay on this grid; p may be at or above p_c");
  }
  out.xi = -1.0 / out.fit.slope;
  out.lo = -1.0 / out.fit.slope_lo;
  out.hi = out.fit.slope_hi < 0 ? -1.0 / out.fit.slope_hi
                                : std::numeric_limits<double>::infinity();
  return out;
}

Estimate estimate_chi(double p, int64_t trials, const LatticeModel& model,
                      uint64_t seed, const RunOptions& opts) {
  check_probability(p);
  check_trials(trials);
  ExploreOptions eo;
  eo.budget = opts.budget;
  const Region full = Region::full(model.d);
  const Vertex origin = Vertex::origin(model.d);
  Moments m = run_trials<Moments>(
      opts.first_trial, trials, opts.workers, [&](uint64_t t, Moments& acc) {
        const ClusterReport rep =
            explore(origin, full, p, sampler_for(model, seed, t, opts), eo);
        acc.add(rep.volume);
        if (!rep.exhausted) ++acc.truncated;
      });
  Estimate e = Estimate::from_moments(m.sum, m.sum_sq, m.n);
  e.truncated = m.truncated;
  if (m.truncated * 100 > m.n) {
    e.warning = std::to_string(m.truncated) + " of " + std::to_string(m.n) +
                " clusters hit the budget; chi is underestimated";
  }
  return e;
}

}  // namespace percolab
