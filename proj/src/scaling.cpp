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

#include "percolab/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "percolab/errors.hpp"
#include "percolab/estimators.hpp"

namespace percolab {

namespace {

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

Line weighted_line(const std::vector<double>& x, const std::vector<double>& y,
                   const std::vector<double>& w) {
  double sw = 0, sx = 0, sy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
  }
  const double mx = sx / sw;
  const double my = sy / sw;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += w[i] * dx * dx;
    sxy += w[i] * dx * dy;
    syy += w[i] * dy * dy;
  }
  Line l;
  l.slope = sxx > 0 ? sxy / sxx : 0.0;
  l.intercept = my - l.slope * mx;
  double ssr = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (l.intercept + l.slope * x[i]);
    ssr += w[i] * r * r;
  }
  const double scale = std::max(syy, 1e-300);
  if (syy <= 1e-24 * std::max(1.0, my * my)) {
    l.r_squared = 1.0;
  } else {
    l.r_squared = std::clamp(1.0 - ssr / scale, 0.0, 1.0);
  }
  return l;
}

FitResult fit_impl(std::span<const FitPoint> points, const FitOptions& opts,
                   bool log_x, const char* what) {
  if (points.size() < 3) {
    throw ArgumentError(std::string(what) + " needs at least 3 points, got " +
                        std::to_string(points.size()));
  }
  if (opts.bootstrap < 0 || !(opts.level > 0 && opts.level < 1)) {
    throw ArgumentError("bootstrap count must be >= 0 and level in (0,1)");
  }
  const size_t k = points.size();
  std::vector<double> x(k), y(k), var(k);
  double min_var = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < k; ++i) {
    const FitPoint& pt = points[i];
    if (!std::isfinite(pt.x) || !std::isfinite(pt.y) || pt.std_error < 0 ||
        (log_x && pt.x <= 0)) {
      throw ArgumentError(std::string(what) + ": invalid point " +
                          std::to_string(i));
    }
    if (pt.y <= 0 || pt.y - 2 * pt.std_error <= 0) {
      throw ArgumentError(std::string(what) + ": point " + std::to_string(i) +
                          " is not resolved above zero (y - 2 stderr <= 0)");
    }
    x[i] = log_x ? std::log(pt.x) : pt.x;
    y[i] = std::log(pt.y);
    var[i] = (pt.std_error / pt.y) * (pt.std_error / pt.y);
    if (var[i] > 0) min_var = std::min(min_var, var[i]);
  }
  std::vector<double> w(k, 1.0);
  if (std::isfinite(min_var)) {
    for (size_t i = 0; i < k; ++i) w[i] = 1.0 / std::max(var[i], min_var);
  }
  const Line base = weighted_line(x, y, w);

  FitResult out;
  out.slope = base.slope;
  out.intercept = base.intercept;
  out.r_squared = base.r_squared;
  out.points_used = static_cast<int64_t>(k);
  out.slope_lo = out.slope_hi = base.slope;
  if (!std::isfinite(min_var) || opts.bootstrap == 0) return out;

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  std::vector<double> slopes;
  slopes.reserve(opts.bootstrap);
  std::vector<double> yb(k);
  for (int b = 0; b < opts.bootstrap; ++b) {
    for (size_t i = 0; i < k; ++i) {
      const FitPoint& pt = points[i];
      const double v = pt.y + pt.std_error * gauss(rng);
      yb[i] = std::log(std::max(v, pt.y * 1e-3));
    }
    slopes.push_back(weighted_line(x, yb, w).slope);
  }
  std::sort(slopes.begin(), slopes.end());
  const double tail = (1.0 - opts.level) / 2.0;
  auto quantile = [&](double q) {
    const double pos = q * (slopes.size() - 1);
    const auto i = static_cast<size_t>(std::floor(pos));
    const size_t j = std::min(i + 1, slopes.size() - 1);
    return slopes[i] + (pos - i) * (slopes[j] - slopes[i]);
  };
  out.slope_lo = std::min(quantile(tail), base.slope);
  out.slope_hi = std::max(quantile(1.0 - tail), base.slope);
  return out;
}

}  // namespace

FitResult loglog_fit(std::span<const FitPoint> points, const FitOptions& opts) {
  return fit_impl(points, opts, true, "loglog_fit");
}

FitResult exp_rate_fit(std::span<const FitPoint> points,
                       const FitOptions& opts) {
  return fit_impl(points, opts, false, "exp_rate_fit");
}

std::vector<FitPoint> curve_points(const TailCurve& curve) {
  curve.validate();
  std::vector<FitPoint> out;
  for (size_t i = 0; i < curve.size(); ++i) {
    const Estimate& e = curve.estimates[i];
    if (e.mean > 0) out.push_back({curve.abscissae[i], e.mean, e.std_error});
  }
  return out;
}

double default_arm_exponent(const LatticeModel& model) {
  return model.d == 1 ? 0.0 : 2.0;
}

CollapseResult scaling_collapse(const std::map<double, TailCurve>& curves,
                                double pc, const CollapseOptions& opts) {
  if (opts.grid_points < 2) throw ArgumentError("grid_points must be >= 2");
  if (opts.reference) opts.reference->validate();

  struct Rescaled {
    std::vector<double> lu;  // log of n sqrt(pc - p)
    std::vector<double> lv;  // log of pi_p(n) / pi_pc(n)
  };
  std::vector<Rescaled> rescaled;
  for (const auto& [p, curve] : curves) {
    if (p >= pc) continue;
    curve.validate();
    const double s = std::sqrt(pc - p);
    Rescaled r;
    for (size_t i = 0; i < curve.size(); ++i) {
      const double n = curve.abscissae[i];
      const double m = curve.estimates[i].mean;
      if (m <= 0 || n <= 0) continue;
      double ref;
      if (opts.reference) {
        const auto& ab = opts.reference->abscissae;
        const auto it = std::find(ab.begin(), ab.end(), n);
        if (it == ab.end()) {
          throw InsufficientSignalError(
              "reference curve has no value at n = " + std::to_string(n));
        }
        ref = opts.reference->estimates[it - ab.begin()].mean;
        if (ref <= 0) {
          throw InsufficientSignalError("reference curve is zero at n = " +
                                        std::to_string(n));
        }
      } else {
        ref = std::pow(n, -opts.arm_exponent);
      }
      r.lu.push_back(std::log(n * s));
      r.lv.push_back(std::log(m / ref));
    }
    if (r.lu.size() < 2) {
      throw InsufficientSignalError(
          "curve at p = " + std::to_string(p) +
          " has fewer than 2 positive points after rescaling");
    }
    rescaled.push_back(std::move(r));
  }
  if (rescaled.size() < 2) {
    throw ArgumentError("collapse needs at least 2 curves with p < pc, got " +
                        std::to_string(rescaled.size()));
  }
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const Rescaled& r : rescaled) {
    lo = std::max(lo, r.lu.front());
    hi = std::min(hi, r.lu.back());
  }
  if (!(lo < hi)) {
    throw InsufficientSignalError(
        "rescaled abscissae n sqrt(pc - p) do not overlap across curves");
  }

  auto interp = [](const Rescaled& r, double u) {
    auto it = std::lower_bound(r.lu.begin(), r.lu.end(), u);
    if (it == r.lu.begin()) return r.lv.front();
    if (it == r.lu.end()) return r.lv.back();
    const size_t j = it - r.lu.begin();
    const double t = (u - r.lu[j - 1]) / (r.lu[j] - r.lu[j - 1]);
    return r.lv[j - 1] + t * (r.lv[j] - r.lv[j - 1]);
  };

  const int g = opts.grid_points;
  double total = 0;
  for (int k = 0; k < g; ++k) {
    const double u = lo + (hi - lo) * k / (g - 1);
    double sum = 0, sum_sq = 0;
    for (const Rescaled& r : rescaled) {
      const double v = interp(r, u);
      sum += v;
      sum_sq += v * v;
    }
    const double m = static_cast<double>(rescaled.size());
    const double var = std::max(0.0, (sum_sq - sum * sum / m) / (m - 1));
    total += std::sqrt(var);
  }
  CollapseResult out;
  out.dispersion = total / g;
  out.curves_used = static_cast<int>(rescaled.size());
  out.u_lo = std::exp(lo);
  out.u_hi = std::exp(hi);
  return out;
}

PcProbe pc_probe(const LatticeModel& model, int64_t n1, int64_t n2, double p,
                 int64_t trials, uint64_t seed, double arm_exponent, double z,
                 const RunOptions& run) {
  const TailCurve c = estimate_pi_curve(p, {n1, n2}, trials, model, seed, run);
  PcProbe out;
  out.p = p;
  out.hits_n1 = static_cast<int64_t>(
      std::llround(c.estimates[0].mean * static_cast<double>(trials)));
  out.hits_n2 = static_cast<int64_t>(
      std::llround(c.estimates[1].mean * static_cast<double>(trials)));
  if (out.hits_n1 == 0 || out.hits_n2 == 0) {
    out.drift = -std::numeric_limits<double>::infinity();
    out.drift_se = 0.0;
    out.subcritical = true;
    return out;
  }
  const double q = static_cast<double>(out.hits_n2) / out.hits_n1;
  out.drift = arm_exponent * std::log(static_cast<double>(n2) / n1) +
              std::log(q);
  out.drift_se = std::sqrt(std::max(0.0, 1.0 - q) / out.hits_n2);
  out.subcritical = out.drift + z * out.drift_se < 0;
  return out;
}

PcEstimate estimate_pc(const LatticeModel& model, int64_t n1, int64_t n2,
                       double tolerance, int64_t trials, uint64_t seed,
                       const PcOptions& opts) {
  model.validate();
  if (n1 < 4 || n2 < 2 * n1) {
    throw ArgumentError("p_c bisection needs n2 >= 2 n1 >= 8");
  }
  if (!(tolerance > 0)) throw ArgumentError("tolerance must be positive");
  if (!(opts.lo >= 0 && opts.lo < opts.hi && opts.hi <= 1)) {
    throw ArgumentError("bracket must satisfy 0 <= lo < hi <= 1");
  }
  if (trials < 1) throw ArgumentError("trials must be >= 1");
  const double kappa = opts.arm_exponent.value_or(default_arm_exponent(model));
  auto probe = [&](double p) {
    return pc_probe(model, n1, n2, p, trials, seed, kappa, opts.z, opts.run);
  };

  PcEstimate out;
  out.lo = opts.lo;
  out.hi = opts.hi;
  PcProbe at_lo = probe(out.lo);
  PcProbe at_hi = probe(out.hi);
  out.probes = {at_lo, at_hi};
  if (!at_lo.subcritical) {
    throw InconclusiveError(
        "lower bracket end p = " + std::to_string(out.lo) +
        " is not classified subcritical; lower it or raise trials");
  }
  if (at_hi.subcritical) {
    throw InconclusiveError("upper bracket end p = " + std::to_string(out.hi) +
                            " is classified subcritical; raise it");
  }
  while (out.hi - out.lo > tolerance) {
    const double mid = 0.5 * (out.lo + out.hi);
    const PcProbe pr = probe(mid);
    out.probes.push_back(pr);
    ++out.rounds;
    if (pr.subcritical) {
      out.lo = mid;
      at_lo = pr;
    } else {
      out.hi = mid;
      at_hi = pr;
    }
  }
  // Coupled endpoint check: D should not decrease from lo to hi.
  if (std::isfinite(at_lo.drift)) {
    const double se = std::hypot(at_lo.drift_se, at_hi.drift_se);
    if (at_hi.drift < at_lo.drift - opts.z * se) {
      const double need = static_cast<double>(trials) * 4.0;
      throw InconclusiveError(
          "bracket endpoints are statistically indistinguishable (D(lo) = " +
          std::to_string(at_lo.drift) + ", D(hi) = " +
          std::to_string(at_hi.drift) + "); try about " +
          std::to_string(static_cast<int64_t>(need)) + " trials");
    }
  }
  out.estimate = 0.5 * (out.lo + out.hi);
  return out;
}

}  // namespace percolab
