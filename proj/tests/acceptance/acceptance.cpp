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

// Acceptance runner. `acceptance N` evaluates criterion N, prints indented
// diagnostics and exactly one "criterion N: PASS|FAIL" line, and exits 0 on
// pass. Criterion 7 is exploratory and always exits 0.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "percolab/crosscheck.hpp"
#include "percolab/errors.hpp"
#include "percolab/estimators.hpp"
#include "percolab/explorer.hpp"
#include "percolab/oracle.hpp"
#include "percolab/region.hpp"
#include "percolab/sampler.hpp"
#include "percolab/scaling.hpp"

using namespace percolab;

namespace {

// ---- tolerances -----------------------------------------------------------

constexpr double kOracleSeconds = 60;
constexpr double kCrosscheckSeconds = 300;
constexpr double kCouplingSeconds = 120;
constexpr double kClosedFormSeconds = 120;
constexpr int64_t kCrosscheckTrials = 100'000;
constexpr int kCouplingSeeds = 1000;

// d = 7 runs.
constexpr int kHighDim = 7;
constexpr double kPcLo = 0.05;
constexpr double kPcHi = 0.12;
constexpr double kPcTolerance = 2e-3;
constexpr int64_t kPcN1 = 6;
constexpr int64_t kPcN2 = 12;
constexpr int64_t kPcTrials = 200'000;
constexpr double kTailSlopeLo = -0.65;
constexpr double kTailSlopeHi = -0.35;
constexpr double kBandFactor = 2.0;
constexpr double kTauSlopeTolerance = 0.5;
constexpr double kXiSlope = -0.5;
constexpr double kXiSlopeTolerance = 0.15;
constexpr double kRateRatioTolerance = 0.30;
constexpr double kMinR2 = 0.8;
constexpr int64_t kMinAccepted = 2000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

class Report {
 public:
  explicit Report(int id) : id_(id) {}
  void note(const char* fmt, auto... args) {
    std::printf("  ");
    std::printf(fmt, args...);
    std::printf("\n");
  }
  // Records one gated sub-check.
  bool check(bool ok, const std::string& what) {
    std::printf("  [%s] %s\n", ok ? "ok" : "miss", what.c_str());
    all_ &= ok;
    return ok;
  }
  int finish(const std::string& title, bool gate = true) {
    std::printf("criterion %d: %s  %s%s\n", id_, all_ ? "PASS" : "FAIL",
                title.c_str(), gate ? "" : " (exploratory, not gated)");
    std::fflush(stdout);
    return (all_ || !gate) ? 0 : 1;
  }

 private:
  int id_;
  bool all_ = true;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---- 1: exact identity catalog ---------------------------------------------

int criterion_identities() {
  Report r(1);
  const auto t0 = Clock::now();
  const auto checks = run_identity_catalog();
  std::map<std::string, std::pair<int, int>> by_kind;  // passed, total
  for (const auto& c : checks) {
    auto& [pass, total] = by_kind[c.kind];
    ++total;
    if (c.passed) {
      ++pass;
    } else {
      r.note("failed: %s (%s)", c.name.c_str(), c.detail.c_str());
    }
  }
  for (const auto& [kind, pt] : by_kind) {
    r.note("%-6s %d/%d exact", kind.c_str(), pt.first, pt.second);
  }
  auto exact = [&](const char* kind, int need) {
    const auto [pass, total] = by_kind[kind];
    r.check(total >= need && pass == total,
            fmt("%s: %d fixtures, need >= %d, all exact", kind, total, need));
  };
  exact("russo", 10);
  exact("fkg", 20);
  exact("bk", 20);
  exact("total", 1);
  const double secs = seconds_since(t0);
  r.check(secs < kOracleSeconds, fmt("wall time %.1f s < %.0f s", secs, kOracleSeconds));
  return r.finish("exact Russo / FKG / BK / normalization catalog");
}

// ---- 2: estimators against enumeration -------------------------------------

int criterion_crosschecks() {
  Report r(2);
  const auto t0 = Clock::now();
  const auto checks = run_estimator_crosschecks(kCrosscheckTrials, 20261018);
  std::set<std::string> families;
  for (const auto& c : checks) {
    r.check(c.passed, c.name + ": " + c.detail);
    for (const char* f : {"pi ", "tau ", "X_B", "spanning", "chi ", "cluster tail"}) {
      if (c.name.rfind(f, 0) == 0) families.insert(f);
    }
  }
  r.check(families.size() == 6,
          fmt("families covered: %zu of 6 (pi, tau, X_D, spanning, chi, cluster tail)",
              families.size()));
  const double secs = seconds_since(t0);
  r.check(secs < kCrosscheckSeconds,
          fmt("wall time %.1f s < %.0f s", secs, kCrosscheckSeconds));
  return r.finish(fmt("estimators within %.0f sigma of exact values at %lld trials",
                      kCrosscheckSigmas, static_cast<long long>(kCrosscheckTrials)));
}

// ---- 3: per-trial coupling -------------------------------------------------

struct CouplingTally {
  int64_t comparisons = 0;
  int64_t open_set = 0;
  int64_t cluster = 0;
  int64_t arm = 0;
  int64_t intrinsic_arm = 0;
  int64_t spanning_count = 0;
  int64_t spanning_exists = 0;
  int64_t chem_dist = 0;
};

void couple(const LatticeModel& m, const std::vector<double>& ps, int64_t n,
            uint64_t seed, CouplingTally& t) {
  const Vertex o = Vertex::origin(m.d);
  const Region box = Region::box(o, static_cast<int32_t>(n));
  const auto edges = FiniteGraph::from_region(box, m).edges;
  SamplerConfig cfg{seed, 0, m, SamplerFault::kNone};
  ExploreOptions keep;
  keep.keep_members = true;

  struct State {
    std::vector<uint8_t> open;
    std::set<Vertex> cluster;
    bool arm = false;
    bool iarm = false;
    int64_t span = 0;
    std::optional<int64_t> sn;
  };
  std::optional<State> prev;
  for (double p : ps) {
    State s;
    for (const Edge& e : edges) s.open.push_back(is_open(cfg, e, p));
    const ClusterReport rep = explore(o, box, p, cfg, keep);
    s.cluster.insert(rep.members.begin(), rep.members.end());
    s.arm = arm_event(o, n, p, cfg);
    s.iarm = intrinsic_arm_event(o, n, p, cfg);
    s.span = spanning_census(n, p, cfg).count;
    s.sn = chemical_distance(o, TargetSet::sphere(n), box, p, cfg);
    if (prev) {
      ++t.comparisons;
      for (size_t i = 0; i < edges.size(); ++i) {
        if (prev->open[i] && !s.open[i]) {
          ++t.open_set;
          break;
        }
      }
      if (!std::includes(s.cluster.begin(), s.cluster.end(),
                         prev->cluster.begin(), prev->cluster.end())) {
        ++t.cluster;
      }
      if (prev->arm && !s.arm) ++t.arm;
      if (prev->iarm && !s.iarm) ++t.intrinsic_arm;
      if (s.span < prev->span) ++t.spanning_count;
      if (prev->span > 0 && s.span == 0) ++t.spanning_exists;
      if (prev->sn && (!s.sn || *s.sn > *prev->sn)) ++t.chem_dist;
    }
    prev = std::move(s);
  }
}

int criterion_coupling() {
  Report r(3);
  const auto t0 = Clock::now();
  struct Setup {
    LatticeModel model;
    std::vector<double> ps;
    int64_t n;
  };
  const std::vector<Setup> setups = {
      {LatticeModel::nearest_neighbor(2), {0.3, 0.4, 0.5, 0.6, 0.7}, 3},
      {LatticeModel::nearest_neighbor(3), {0.15, 0.2, 0.25, 0.3, 0.35}, 2},
  };
  CouplingTally t;
  for (const Setup& s : setups) {
    CouplingTally local;
    for (int seed = 1; seed <= kCouplingSeeds; ++seed) {
      couple(s.model, s.ps, s.n, static_cast<uint64_t>(seed), local);
    }
    r.note("d=%d n=%lld: %lld coupled p-steps; spanning-count decreases %lld, "
           "spanning existence lost %lld",
           s.model.d, static_cast<long long>(s.n),
           static_cast<long long>(local.comparisons),
           static_cast<long long>(local.spanning_count),
           static_cast<long long>(local.spanning_exists));
    t.comparisons += local.comparisons;
    t.open_set += local.open_set;
    t.cluster += local.cluster;
    t.arm += local.arm;
    t.intrinsic_arm += local.intrinsic_arm;
    t.spanning_count += local.spanning_count;
    t.spanning_exists += local.spanning_exists;
    t.chem_dist += local.chem_dist;
  }
  auto zero = [&](int64_t v, const char* what) {
    r.check(v == 0, fmt("%s: %lld violations", what, static_cast<long long>(v)));
  };
  zero(t.open_set, "open bond sets nested");
  zero(t.cluster, "clusters nested");
  zero(t.arm, "arm event monotone");
  zero(t.spanning_count, "spanning-cluster count monotone");
  zero(t.chem_dist, "S_n nonincreasing where defined");
  // Reported only: neither is an increasing event. Merging two spanning
  // clusters lowers the count; a shortcut bond lowers the intrinsic radius.
  r.note("spanning existence (count >= 1) lost: %lld",
         static_cast<long long>(t.spanning_exists));
  r.note("intrinsic arm event lost: %lld", static_cast<long long>(t.intrinsic_arm));
  const double secs = seconds_since(t0);
  r.check(secs < kCouplingSeconds,
          fmt("wall time %.1f s < %.0f s", secs, kCouplingSeconds));
  return r.finish(fmt("per-trial monotone coupling over %d seeds x 5 p values",
                      kCouplingSeeds));
}

// ---- 4: closed forms on the line -------------------------------------------

int criterion_closed_forms() {
  Report r(4);
  const auto t0 = Clock::now();
  const auto line = LatticeModel::nearest_neighbor(1);
  const XiEstimate xi = estimate_xi(0.5, {4, 6, 8, 10, 12}, 1'000'000, line, 41);
  const double exact_xi = 1 / std::log(2.0);
  const double width = xi.hi - xi.lo;
  r.check(std::abs(xi.xi - exact_xi) <= 3 * width,
          fmt("xi(0.5) = %.4f, CI [%.4f, %.4f], exact %.4f", xi.xi, xi.lo, xi.hi,
              exact_xi));
  const LDeltaEstimate l = estimate_L_delta(0.5, 0.25, 10, 1'000'000, line, 42);
  r.check(l.value && *l.value == 3,
          fmt("L_delta(0.5, 0.25) = %lld (conservative %lld), exact 3",
              static_cast<long long>(l.value.value_or(-1)),
              static_cast<long long>(l.conservative.value_or(-1))));
  const SpanningEstimate s = estimate_spanning(0.5, 1, 1'000'000, line, 43);
  r.check(std::abs(s.count.mean - 0.25) <= 4 * s.count.std_error,
          fmt("E|S_1| = %.5f +- %.5f, exact 0.25", s.count.mean, s.count.std_error));
  const double secs = seconds_since(t0);
  r.check(secs < kClosedFormSeconds,
          fmt("wall time %.1f s < %.0f s", secs, kClosedFormSeconds));
  return r.finish("d=1 closed forms");
}

// ---- d = 7 -----------------------------------------------------------------

const LatticeModel& high_dim() {
  static const LatticeModel m = LatticeModel::nearest_neighbor(kHighDim);
  return m;
}

double critical_point(Report& r) {
  const auto t0 = Clock::now();
  PcOptions o;
  o.lo = kPcLo;
  o.hi = kPcHi;
  const PcEstimate pc =
      estimate_pc(high_dim(), kPcN1, kPcN2, kPcTolerance, kPcTrials, 7001, o);
  r.note("p_c bracket [%.5f, %.5f] after %d rounds (%.0f s)", pc.lo, pc.hi,
         pc.rounds, seconds_since(t0));
  r.check(pc.hi - pc.lo <= kPcTolerance,
          fmt("bracket width %.2e <= %.0e", pc.hi - pc.lo, kPcTolerance));
  return pc.estimate;
}

bool within_factor(const std::vector<double>& v, double factor) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *lo > 0 && *hi <= factor * *lo;
}

int criterion_critical_exponents() {
  Report r(5);
  const double pc = critical_point(r);
  const auto& m = high_dim();

  RunOptions big;
  big.budget.max_volume = 10'000;
  const std::vector<int64_t> ts = {100, 200, 500, 1000, 2000, 5000, 10'000};
  const TailCurve tail = estimate_cluster_tail(pc, ts, 1'000'000, m, 7101, big);
  const FitResult tf = loglog_fit(curve_points(tail));
  r.check(tf.slope >= kTailSlopeLo && tf.slope <= kTailSlopeHi,
          fmt("(a) P(|C| > t) slope %.3f [%.3f, %.3f] over t in [1e2, 1e4], "
              "want [%.2f, %.2f]",
              tf.slope, tf.slope_lo, tf.slope_hi, kTailSlopeLo, kTailSlopeHi));

  const TailCurve arm = estimate_pi_curve(pc, {8, 12, 16, 24}, 1'000'000, m, 7102);
  std::vector<double> scaled;
  for (size_t i = 0; i < arm.size(); ++i) {
    scaled.push_back(arm.abscissae[i] * arm.abscissae[i] * arm.estimates[i].mean);
    r.note("n = %2.0f  n^2 pi(n) = %.4f +- %.4f", arm.abscissae[i], scaled.back(),
           arm.abscissae[i] * arm.abscissae[i] * arm.estimates[i].std_error);
  }
  r.check(within_factor(scaled, kBandFactor), "(b) n^2 pi(n) within a factor 2");

  const TailCurve iarm =
      estimate_intrinsic_arm_curve(pc, {8, 16, 32}, 1'000'000, m, 7103);
  std::vector<double> iscaled;
  for (size_t i = 0; i < iarm.size(); ++i) {
    iscaled.push_back(iarm.abscissae[i] * iarm.estimates[i].mean);
    r.note("n = %2.0f  n P(intrinsic radius >= n) = %.4f", iarm.abscissae[i],
           iscaled.back());
  }
  r.check(within_factor(iscaled, kBandFactor), "(c) n P(intrinsic arm) within a factor 2");

  std::vector<Vertex> ys;
  for (int32_t k : {2, 3, 4, 6}) ys.push_back(Vertex::unit(kHighDim, 0, k));
  RunOptions tau_budget;
  tau_budget.budget.max_volume = 100'000;
  const auto taus = estimate_tau_profile(pc, Vertex::origin(kHighDim), ys,
                                         Region::full(kHighDim), 2'000'000, m,
                                         7104, tau_budget);
  std::vector<FitPoint> tp;
  for (size_t i = 0; i < ys.size(); ++i) {
    tp.push_back({static_cast<double>(ys[i][0]), taus[i].mean, taus[i].std_error});
    r.note("r = %d  tau = %.3e +- %.1e (truncated %lld)", ys[i][0], taus[i].mean,
           taus[i].std_error, static_cast<long long>(taus[i].truncated));
  }
  const FitResult tauf = loglog_fit(tp);
  r.check(std::abs(tauf.slope + (kHighDim - 2)) <= kTauSlopeTolerance,
          fmt("(d) tau(0, r e1) slope %.3f [%.3f, %.3f], want %d +- %.1f", tauf.slope,
              tauf.slope_lo, tauf.slope_hi, -(kHighDim - 2), kTauSlopeTolerance));
  return r.finish(fmt("d=7 critical exponents at p_c = %.5f", pc));
}

// Keeps grid points whose arm probability is resolved in a pilot run.
std::vector<int64_t> resolvable_grid(double p, uint64_t seed) {
  const std::vector<int64_t> wide = {1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 24, 32};
  const TailCurve pilot = estimate_pi_curve(p, wide, 100'000, high_dim(), seed);
  std::vector<int64_t> out;
  for (size_t i = 0; i < wide.size(); ++i) {
    // At least ~400 expected hits in the full run of 10x the pilot.
    if (pilot.estimates[i].mean * 1'000'000 >= 400) out.push_back(wide[i]);
  }
  return out;
}

int criterion_near_critical() {
  Report r(6);
  const double pc = critical_point(r);
  const auto& m = high_dim();

  const std::vector<double> gaps = {0.01, 0.02, 0.04};
  std::vector<FitPoint> xi_pts;
  std::vector<double> rates;
  for (double g : gaps) {
    const double p = pc - g;
    const auto grid = resolvable_grid(p, 7200);
    try {
      const XiEstimate x = estimate_xi(p, grid, 1'000'000, m, 7201);
      r.note("p_c - p = %.2f: grid %lld..%lld, xi = %.4f [%.4f, %.4f]", g,
             static_cast<long long>(grid.front()), static_cast<long long>(grid.back()),
             x.xi, x.lo, x.hi);
      xi_pts.push_back({g, x.xi, std::max(x.hi - x.lo, 0.0) / 4});
      rates.push_back(1 / x.xi);
    } catch (const Error& e) {
      r.check(false, fmt("p_c - p = %.2f: %s", g, e.what()));
    }
  }
  if (xi_pts.size() == gaps.size()) {
    const FitResult f = loglog_fit(xi_pts);
    r.check(std::abs(f.slope - kXiSlope) <= kXiSlopeTolerance,
            fmt("log xi vs log(p_c - p) slope %.3f, want %.2f +- %.2f", f.slope,
                kXiSlope, kXiSlopeTolerance));
    for (size_t i = 0; i + 1 < rates.size(); ++i) {
      const double ratio = rates[i + 1] / rates[i];
      r.check(std::abs(ratio / std::sqrt(2.0) - 1) <= kRateRatioTolerance,
              fmt("rate ratio gap %.2f -> %.2f: %.3f, want sqrt 2 +- 30%%", gaps[i],
                  gaps[i + 1], ratio));
    }
  }

  std::map<double, TailCurve> curves;
  const std::vector<int64_t> ns = {1, 2, 3, 4, 5, 6, 8, 10, 12, 16};
  for (double g : {0.005, 0.01, 0.015, 0.02, 0.03, 0.04}) {
    curves[pc - g] = estimate_pi_curve(pc - g, ns, 1'000'000, m, 7202);
  }
  std::map<double, double> disp;
  for (double shift : {-0.01, 0.0, 0.01}) {
    try {
      disp[shift] = scaling_collapse(curves, pc + shift).dispersion;
      r.note("collapse at p_c %+.2f: dispersion %.4f", shift, disp[shift]);
    } catch (const Error& e) {
      r.note("collapse at p_c %+.2f: %s", shift, e.what());
    }
  }
  r.check(disp.size() == 3 && disp[0.0] < disp[-0.01] && disp[0.0] < disp[0.01],
          "collapse dispersion minimal at p_c among p_c - 0.01, p_c, p_c + 0.01");
  return r.finish(fmt("d=7 near-critical scaling below p_c = %.5f", pc));
}

double r_squared(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double cxx = sxx - sx * sx / n;
  const double cxy = sxy - sx * sy / n;
  const double cyy = syy - sy * sy / n;
  return cyy > 0 && cxx > 0 ? cxy * cxy / (cxx * cyy) : 0.0;
}

// -log F(lambda) against transform(lambda) over the informative part of a
// lower-tail CDF.
void tail_linearity(Report& r, const TailCurve& cdf, double (*transform)(double),
                    const char* label) {
  std::vector<double> x, y;
  for (size_t i = 0; i < cdf.size(); ++i) {
    const Estimate& e = cdf.estimates[i];
    if (e.mean > 0 && e.mean < 0.5 && e.mean > 2 * e.std_error) {
      x.push_back(transform(cdf.abscissae[i]));
      y.push_back(-std::log(e.mean));
    }
    r.note("%s lambda = %.4g  F = %.4f +- %.4f", label, cdf.abscissae[i], e.mean,
           e.std_error);
  }
  if (x.size() < 3) {
    r.check(false, fmt("%s: only %zu informative lambda values", label, x.size()));
    return;
  }
  const double r2 = r_squared(x, y);
  r.check(r2 >= kMinR2, fmt("%s: R^2 = %.3f over %zu points, want >= %.1f", label,
                            r2, x.size(), kMinR2));
}

int criterion_conditioned_tails() {
  Report r(7);
  const double pc = critical_point(r);
  const auto& m = high_dim();

  std::vector<double> medians;
  SnTails at10;
  const std::vector<double> lambdas = {0.1, 0.11, 0.12, 0.14, 0.16, 0.2,
                                       0.25, 0.3, 0.4, 0.5, 0.7, 1.0};
  for (int64_t n : {6, 10, 14}) {
    SnTails s = estimate_Sn_tails(pc, n, lambdas, kMinAccepted, m, 7300);
    r.note("n = %2lld: %lld accepted of %lld (rate %.4f)%s, median S_n/n^2 = %.4f",
           static_cast<long long>(n), static_cast<long long>(s.samples.accepted),
           static_cast<long long>(s.samples.trials), s.samples.acceptance_rate(),
           s.samples.partial ? " partial" : "", s.median_scaled());
    r.check(!s.samples.partial && s.samples.accepted >= kMinAccepted,
            fmt("n = %lld: at least %lld accepted", static_cast<long long>(n),
                static_cast<long long>(kMinAccepted)));
    medians.push_back(s.median_scaled());
    if (n == 10) at10 = std::move(s);
  }
  r.check(within_factor(medians, kBandFactor), "median S_n/n^2 within a factor 2");
  tail_linearity(r, at10.lower, [](double l) { return 1 / l; }, "S_n lower tail vs 1/lambda");

  std::vector<double> vl;
  for (double l = 1e-3; l <= 1.0; l *= 1.5) vl.push_back(l);
  const VolumeTail v = estimate_volume_tail(pc, 10, vl, kMinAccepted, m, 7301);
  tail_linearity(r, v.cdf, [](double l) { return std::pow(l, -1.0 / 3); },
                 "volume lower tail vs lambda^-1/3");

  // Direction checks, reported only.
  std::vector<double> span;
  for (int64_t n : {2, 3, 4}) {
    const SpanningEstimate s = estimate_spanning(pc, n, n < 4 ? 2000 : 200, m, 7302);
    span.push_back(s.count.mean);
    r.note("E|S_%lld| = %.4f +- %.4f", static_cast<long long>(n), s.count.mean,
           s.count.std_error);
  }
  r.note("E|S_n| increasing over n = 2, 3, 4: %s",
         span[0] < span[1] && span[1] < span[2] ? "yes" : "no");
  std::vector<Vertex> ys;
  for (int32_t k : {1, 2, 3, 4}) ys.push_back(Vertex::unit(kHighDim, 0, k));
  RunOptions capped;
  capped.budget.max_volume = 100'000;
  const auto full = estimate_tau_profile(pc, Vertex::origin(kHighDim), ys,
                                         Region::full(kHighDim), 200'000, m, 7303,
                                         capped);
  const auto half = estimate_tau_profile(pc, Vertex::origin(kHighDim), ys,
                                         Region::positive_half_space(kHighDim),
                                         200'000, m, 7303, capped);
  bool ordered = true;
  for (size_t i = 0; i < ys.size(); ++i) {
    ordered &= half[i].mean <= full[i].mean;
    r.note("r = %d  tau_H = %.3e  tau = %.3e", ys[i][0], half[i].mean, full[i].mean);
  }
  r.note("tau_H <= tau at every r: %s", ordered ? "yes" : "no");
  return r.finish(fmt("d=7 conditioned tails at p_c = %.5f", pc), false);
}

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const std::map<int, std::function<int()>> criteria = {
      {1, criterion_identities},         {2, criterion_crosschecks},
      {3, criterion_coupling},           {4, criterion_closed_forms},
      {5, criterion_critical_exponents}, {6, criterion_near_critical},
      {7, criterion_conditioned_tails},
  };
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty()) which = {1, 2, 3, 4};
  int rc = 0;
  for (int c : which) {
    const auto it = criteria.find(c);
    if (it == criteria.end()) {
      std::fprintf(stderr, "unknown criterion %d\n", c);
      return 2;
    }
    try {
      rc |= it->second();
    } catch (const std::exception& e) {
      std::printf("criterion %d: FAIL  error: %s\n", c, e.what());
      rc |= 1;
    }
  }
  return rc;
}
