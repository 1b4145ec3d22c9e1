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

#include "percolab/experiment.hpp"

#include <glob.h>
#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "percolab/crosscheck.hpp"
#include "percolab/estimators.hpp"
#include "percolab/oracle.hpp"
#include "percolab/scaling.hpp"

namespace percolab {

ConfigError::ConfigError(std::string field, const std::string& what)
    : ArgumentError("config field '" + field + "': " + what),
      field_(std::move(field)) {}

namespace {

const std::vector<std::pair<Estimand, const char*>> kEstimandNames = {
    {Estimand::kPi, "pi"},
    {Estimand::kPiCurve, "pi_curve"},
    {Estimand::kTau, "tau"},
    {Estimand::kSnTails, "Sn_tails"},
    {Estimand::kVolumeTail, "volume_tail"},
    {Estimand::kClusterTail, "cluster_tail"},
    {Estimand::kIntrinsicArm, "intrinsic_arm"},
    {Estimand::kIntrinsicArmCurve, "intrinsic_arm_curve"},
    {Estimand::kSpanning, "spanning"},
    {Estimand::kEXD, "EXD"},
    {Estimand::kLDelta, "L_delta"},
    {Estimand::kXi, "xi"},
    {Estimand::kChi, "chi"},
};

bool takes_n_cells(Estimand e) {
  switch (e) {
    case Estimand::kPi:
    case Estimand::kIntrinsicArm:
    case Estimand::kSpanning:
    case Estimand::kEXD:
    case Estimand::kSnTails:
    case Estimand::kVolumeTail:
      return true;
    default:
      return false;
  }
}

bool takes_n_curve(Estimand e) {
  return e == Estimand::kPiCurve || e == Estimand::kIntrinsicArmCurve ||
         e == Estimand::kXi;
}

bool conditioned(Estimand e) {
  return e == Estimand::kSnTails || e == Estimand::kVolumeTail;
}

// Typed field readers; every failure names the field.
class Fields {
 public:
  Fields(const json& j, std::string prefix)
      : j_(j), prefix_(std::move(prefix)) {
    if (!j.is_object()) throw ConfigError(prefix_.empty() ? "$" : prefix_,
                                          "expected an object");
  }

  std::string path(const std::string& key) const {
    return prefix_.empty() ? key : prefix_ + "." + key;
  }
  bool has(const std::string& key) const { return j_.contains(key); }
  const json& at(const std::string& key) const {
    if (!has(key)) throw ConfigError(path(key), "required");
    return j_.at(key);
  }

  int64_t integer(const std::string& key, int64_t lo, int64_t hi) const {
    const json& v = at(key);
    if (!v.is_number_integer()) throw ConfigError(path(key), "expected an integer");
    if (v.is_number_unsigned() && v.get<uint64_t>() > static_cast<uint64_t>(hi)) {
      throw ConfigError(path(key), "out of range");
    }
    const auto x = v.get<int64_t>();
    if (x < lo || x > hi) {
      throw ConfigError(path(key), "must lie in [" + std::to_string(lo) +
                                       ", " + std::to_string(hi) + "]");
    }
    return x;
  }
  int64_t integer_or(const std::string& key, int64_t lo, int64_t hi,
                     int64_t def) const {
    return has(key) ? integer(key, lo, hi) : def;
  }
  uint64_t unsigned64(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_number_integer() ||
        (!v.is_number_unsigned() && v.get<int64_t>() < 0)) {
      throw ConfigError(path(key), "expected an unsigned 64-bit integer");
    }
    return v.get<uint64_t>();
  }
  double number(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_number()) throw ConfigError(path(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path(key), "must be finite");
    return x;
  }
  std::string string(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_string()) throw ConfigError(path(key), "expected a string");
    return v.get<std::string>();
  }
  std::vector<double> numbers(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_array() || v.empty()) {
      throw ConfigError(path(key), "expected a nonempty array of numbers");
    }
    std::vector<double> out;
    for (const json& e : v) {
      if (!e.is_number()) throw ConfigError(path(key), "expected numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }
  std::vector<int64_t> integers(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_array() || v.empty()) {
      throw ConfigError(path(key), "expected a nonempty array of integers");
    }
    std::vector<int64_t> out;
    for (const json& e : v) {
      if (!e.is_number_integer()) {
        throw ConfigError(path(key), "expected integers");
      }
      out.push_back(e.get<int64_t>());
    }
    return out;
  }
  void only(const std::set<std::string>& allowed) const {
    for (const auto& [k, v] : j_.items()) {
      if (!allowed.count(k)) throw ConfigError(path(k), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string prefix_;
};

Vertex vertex_from_json(const json& v, int d, const std::string& field) {
  if (!v.is_array() || static_cast<int>(v.size()) != d) {
    throw ConfigError(field, "expected an array of " + std::to_string(d) +
                                 " integers");
  }
  std::vector<int32_t> c;
  for (const json& e : v) {
    if (!e.is_number_integer() || std::llabs(e.get<int64_t>()) >= (1LL << 31)) {
      throw ConfigError(field, "coordinates must be 32-bit integers");
    }
    c.push_back(static_cast<int32_t>(e.get<int64_t>()));
  }
  return Vertex(c);
}

Region region_from_json(const json& j, int d, const std::string& field) {
  Fields f(j, field);
  const std::string kind = f.string("kind");
  auto i32 = [&](const std::string& k, int64_t lo) {
    return static_cast<int32_t>(f.integer(k, lo, (1LL << 31) - 1));
  };
  try {
    if (kind == "full") {
      f.only({"kind"});
      return Region::full(d);
    }
    if (kind == "box") {
      f.only({"kind", "center", "radius"});
      const Vertex c = f.has("center")
                           ? vertex_from_json(f.at("center"), d, f.path("center"))
                           : Vertex::origin(d);
      return Region::box(c, i32("radius", 0));
    }
    if (kind == "half_space") {
      f.only({"kind", "axis", "sign", "offset"});
      const auto axis = static_cast<int>(f.integer("axis", 0, d - 1));
      const auto sign = static_cast<int>(f.integer("sign", -1, 1));
      if (sign == 0) throw ConfigError(f.path("sign"), "must be -1 or 1");
      return Region::half_space(
          d, axis, sign,
          static_cast<int32_t>(f.integer_or("offset", -(1LL << 31) + 1,
                                            (1LL << 31) - 1, 0)));
    }
    if (kind == "positive_half_space") {
      f.only({"kind"});
      return Region::positive_half_space(d);
    }
    if (kind == "half_box") {
      f.only({"kind", "n"});
      return Region::half_box(d, i32("n", 0));
    }
    if (kind == "annulus") {
      f.only({"kind", "center", "m", "n"});
      const Vertex c = f.has("center")
                           ? vertex_from_json(f.at("center"), d, f.path("center"))
                           : Vertex::origin(d);
      return Region::annulus(c, i32("m", 0), i32("n", 1));
    }
    if (kind == "rect") {
      f.only({"kind", "alpha", "n", "shift"});
      const Vertex s = f.has("shift")
                           ? vertex_from_json(f.at("shift"), d, f.path("shift"))
                           : Vertex::origin(d);
      return Region::rect(d, i32("alpha", 1), i32("n", -(1LL << 31) + 1), s);
    }
    if (kind == "cuboid") {
      f.only({"kind", "lo", "hi"});
      return Region::cuboid(vertex_from_json(f.at("lo"), d, f.path("lo")),
                            vertex_from_json(f.at("hi"), d, f.path("hi")));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const ArgumentError& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(f.path("kind"), "unknown region kind '" + kind + "'");
}

json vertex_json(const Vertex& v) { return v.coords(); }

void check_increasing(const std::vector<int64_t>& g, const std::string& field,
                      int64_t minimum) {
  for (size_t i = 0; i < g.size(); ++i) {
    if (g[i] < minimum || (i && g[i] <= g[i - 1])) {
      throw ConfigError(field, "must increase strictly with entries >= " +
                                   std::to_string(minimum));
    }
  }
}

}  // namespace

std::string to_string(Estimand e) {
  for (const auto& [k, name] : kEstimandNames) {
    if (k == e) return name;
  }
  return "?";
}

Estimand parse_estimand(const std::string& s) {
  for (const auto& [k, name] : kEstimandNames) {
    if (s == name) return k;
  }
  std::string known;
  for (const auto& [k, name] : kEstimandNames) {
    known += (known.empty() ? "" : ", ") + std::string(name);
  }
  throw ConfigError("estimand", "unknown value '" + s + "' (known: " + known +
                                    ")");
}

LatticeModel model_from_json(const json& j, const std::string& field) {
  Fields f(j, field);
  f.only({"d", "kind", "lambda"});
  const int d = static_cast<int>(f.integer("d", 1, kMaxDim));
  const std::string kind =
      f.has("kind") ? f.string("kind") : std::string("nearest-neighbor");
  if (kind == "nearest-neighbor") {
    if (f.has("lambda")) {
      throw ConfigError(f.path("lambda"),
                        "only allowed for the spread-out model");
    }
    return LatticeModel::nearest_neighbor(d);
  }
  if (kind == "spread-out") {
    return LatticeModel::spread_out(d, static_cast<int>(f.integer("lambda", 1, 64)));
  }
  throw ConfigError(f.path("kind"),
                    "expected 'nearest-neighbor' or 'spread-out'");
}

json model_to_json(const LatticeModel& m) {
  json j = {{"d", m.d}};
  if (m.kind == LatticeModel::Kind::kSpreadOut) {
    j["kind"] = "spread-out";
    j["lambda"] = m.lambda;
  } else {
    j["kind"] = "nearest-neighbor";
  }
  return j;
}

std::string canonical_hash(const json& j) {
  const std::string s = j.dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(s.data(), s.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  Fields f(j, "");
  f.only({"$schema", "experiment_id", "estimand", "model", "p", "p_grid", "n",
          "n_grid", "lambda_grid", "t_grid", "trials", "min_accepted",
          "max_trials", "budget", "seed", "first_trial", "workers", "x", "y",
          "y_grid", "region", "delta", "n_max", "z", "arm_exponent",
          "site_cap", "description"});
  if (f.has("$schema") && f.string("$schema") != kConfigSchemaId) {
    throw ConfigError("$schema", std::string("unsupported schema id, expected ") +
                                     kConfigSchemaId);
  }
  ExperimentConfig c;
  c.experiment_id = f.string("experiment_id");
  if (c.experiment_id.empty() ||
      c.experiment_id.find_first_not_of(
          "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_.-") !=
          std::string::npos) {
    throw ConfigError("experiment_id", "use letters, digits, '_', '.', '-'");
  }
  c.estimand = parse_estimand(f.string("estimand"));
  try {
    c.model = model_from_json(f.at("model"), "model");
  } catch (const ConfigError&) {
    throw;
  } catch (const ArgumentError& e) {
    throw ConfigError("model", e.what());
  }
  if (!f.has("seed")) throw ConfigError("seed", "required (no clock seeding)");
  c.seed = f.unsigned64("seed");
  c.first_trial = f.has("first_trial") ? f.unsigned64("first_trial") : 0;
  c.workers = static_cast<int>(f.integer_or("workers", 1, 1024, 1));

  if (f.has("p") == f.has("p_grid")) {
    throw ConfigError("p", "give exactly one of 'p' and 'p_grid'");
  }
  c.p_grid = f.has("p") ? std::vector<double>{f.number("p")} : f.numbers("p_grid");
  for (double p : c.p_grid) {
    if (!(p >= 0 && p <= 1)) {
      throw ConfigError(f.has("p") ? "p" : "p_grid", "probabilities lie in [0, 1]");
    }
  }

  const Estimand e = c.estimand;
  if (takes_n_cells(e) || takes_n_curve(e)) {
    if (f.has("n") == f.has("n_grid")) {
      throw ConfigError("n", "give exactly one of 'n' and 'n_grid'");
    }
    c.n_grid = f.has("n") ? std::vector<int64_t>{f.integer("n", 1, 1 << 30)}
                          : f.integers("n_grid");
    check_increasing(c.n_grid, f.has("n") ? "n" : "n_grid", 1);
  } else if (f.has("n") || f.has("n_grid")) {
    throw ConfigError(f.has("n") ? "n" : "n_grid",
                      "not used by estimand " + to_string(e));
  }
  if (conditioned(e)) {
    c.lambda_grid = f.numbers("lambda_grid");
    for (size_t i = 0; i < c.lambda_grid.size(); ++i) {
      if (!(c.lambda_grid[i] > 0) ||
          (i && c.lambda_grid[i] <= c.lambda_grid[i - 1])) {
        throw ConfigError("lambda_grid", "must be positive and increasing");
      }
    }
    c.min_accepted = f.integer("min_accepted", 1, int64_t{1} << 40);
    c.max_trials = f.integer_or("max_trials", 1, int64_t{1} << 40, 10'000'000);
    if (f.has("trials")) {
      throw ConfigError("trials", "conditioned estimands use min_accepted");
    }
  } else {
    c.trials = f.integer("trials", 1, int64_t{1} << 40);
  }
  if (e == Estimand::kClusterTail) {
    c.t_grid = f.integers("t_grid");
    check_increasing(c.t_grid, "t_grid", 0);
  }
  if (f.has("budget")) {
    Fields b(f.at("budget"), "budget");
    b.only({"max_volume", "max_intrinsic_radius"});
    c.budget.max_volume =
        b.integer_or("max_volume", 1, int64_t{1} << 40, c.budget.max_volume);
    c.budget.max_intrinsic_radius = b.integer_or(
        "max_intrinsic_radius", 1, int64_t{1} << 40,
        c.budget.max_intrinsic_radius);
  }
  if (e == Estimand::kClusterTail && c.t_grid.back() > c.budget.max_volume) {
    throw ConfigError("t_grid", "largest t exceeds budget.max_volume");
  }
  if (e == Estimand::kTau) {
    c.x = f.has("x") ? vertex_from_json(f.at("x"), c.model.d, "x")
                     : Vertex::origin(c.model.d);
    if (f.has("y") == f.has("y_grid")) {
      throw ConfigError("y", "give exactly one of 'y' and 'y_grid'");
    }
    if (f.has("y")) {
      c.ys.push_back(vertex_from_json(f.at("y"), c.model.d, "y"));
    } else {
      const json& g = f.at("y_grid");
      if (!g.is_array() || g.empty()) {
        throw ConfigError("y_grid", "expected a nonempty array of vertices");
      }
      for (const json& y : g) {
        c.ys.push_back(vertex_from_json(y, c.model.d, "y_grid"));
      }
    }
    c.region_spec = f.has("region") ? f.at("region") : json{{"kind", "full"}};
    c.region = region_from_json(c.region_spec, c.model.d, "region");
    if (!c.region->contains(*c.x)) {
      throw ConfigError("x", "not admissible in " + c.region->describe());
    }
    for (const Vertex& y : c.ys) {
      if (!c.region->contains(y)) {
        throw ConfigError("y", y.to_string() + " not admissible in " +
                                   c.region->describe());
      }
    }
  }
  if (e == Estimand::kLDelta) {
    c.delta = f.number("delta");
    if (!(c.delta > 0)) throw ConfigError("delta", "must be positive");
    c.n_max = f.integer("n_max", 1, 1 << 20);
    c.z = f.has("z") ? f.number("z") : 1.96;
  }
  if (e == Estimand::kXi) {
    if (c.n_grid.size() < 3 || c.n_grid.back() < 3 * c.n_grid.front()) {
      throw ConfigError("n_grid", "xi needs >= 3 points spanning a factor 3");
    }
    if (f.has("arm_exponent")) c.arm_exponent = f.number("arm_exponent");
  }
  c.site_cap = f.has("site_cap") ? f.unsigned64("site_cap") : kDefaultCensusCap;

  c.canonical = j;
  c.canonical.erase("workers");
  c.canonical.erase("description");
  return c;
}

std::string ExperimentConfig::hash() const { return canonical_hash(canonical); }

json to_json(const Estimate& e) {
  json j = {{"mean", e.mean},           {"stderr", e.std_error},
            {"trials", e.trials},       {"accepted", e.accepted},
            {"truncated", e.truncated}};
  if (!e.warning.empty()) j["warning"] = e.warning;
  return j;
}

json to_json(const TailCurve& c) {
  json est = json::array();
  for (const Estimate& e : c.estimates) est.push_back(to_json(e));
  return {{"estimand", c.estimand}, {"abscissae", c.abscissae},
          {"estimates", est}};
}

namespace {

json fit_json(const FitResult& f) {
  return {{"slope", f.slope},
          {"intercept", f.intercept},
          {"r_squared", f.r_squared},
          {"slope_ci", {f.slope_lo, f.slope_hi}},
          {"points_used", f.points_used}};
}

json sampler_json() {
  return {{"hash", "siphash-2-4"},
          {"k0", "seed"},
          {"k1", "first_trial + trial index"},
          {"message", "d, coords(a), coords(b) as little-endian int32, a < b"},
          {"uniform", "(h >> 11) * 2^-53"},
          {"open", "uniform < p"}};
}

struct Counters {
  int64_t trials = 0;
  int64_t accepted = 0;
  int64_t truncated = 0;
  json to_json() const {
    return {{"trials", trials}, {"accepted", accepted}, {"truncated", truncated}};
  }
};

Counters counters_of(const Estimate& e) {
  return {e.trials, e.accepted, e.truncated};
}

Counters counters_of(const TailCurve& c) {
  Counters out;
  for (const Estimate& e : c.estimates) {
    out.trials = std::max(out.trials, e.trials);
    out.accepted = std::max(out.accepted, e.accepted);
    out.truncated = std::max(out.truncated, e.truncated);
  }
  return out;
}

struct CellResult {
  json payload;
  Counters counters;
  std::vector<std::string> flags;
};

CellResult run_cell(const ExperimentConfig& c, double p,
                    std::optional<int64_t> n) {
  RunOptions opts;
  opts.workers = c.workers;
  opts.budget = c.budget;
  opts.first_trial = c.first_trial;
  const LatticeModel& m = c.model;
  CellResult r;
  switch (c.estimand) {
    case Estimand::kPi: {
      const Estimate e = estimate_pi(p, *n, c.trials, m, c.seed, opts);
      r.payload = to_json(e);
      r.counters = counters_of(e);
      break;
    }
    case Estimand::kPiCurve: {
      const TailCurve t = estimate_pi_curve(p, c.n_grid, c.trials, m, c.seed, opts);
      r.payload = to_json(t);
      r.counters = counters_of(t);
      break;
    }
    case Estimand::kTau: {
      const auto es = estimate_tau_profile(p, *c.x, c.ys, *c.region, c.trials,
                                           m, c.seed, opts);
      json targets = json::array();
      for (size_t i = 0; i < es.size(); ++i) {
        targets.push_back({{"y", vertex_json(c.ys[i])},
                           {"r", linf_distance(*c.x, c.ys[i])},
                           {"estimate", to_json(es[i])}});
        r.counters.trials = es[i].trials;
        r.counters.accepted = es[i].accepted;
        r.counters.truncated = std::max(r.counters.truncated, es[i].truncated);
      }
      r.payload = {{"x", vertex_json(*c.x)}, {"targets", targets}};
      break;
    }
    case Estimand::kSnTails: {
      const SnTails s = estimate_Sn_tails(p, *n, c.lambda_grid, c.min_accepted,
                                          m, c.seed, opts, c.max_trials);
      r.payload = {{"lower", to_json(s.lower)},
                   {"upper", to_json(s.upper)},
                   {"median_scaled", s.median_scaled()},
                   {"acceptance_rate", s.samples.acceptance_rate()},
                   {"partial", s.samples.partial}};
      r.counters = {s.samples.trials, s.samples.accepted, s.samples.truncated};
      if (s.samples.partial) r.flags.push_back("partial");
      break;
    }
    case Estimand::kVolumeTail: {
      const VolumeTail v = estimate_volume_tail(
          p, *n, c.lambda_grid, c.min_accepted, m, c.seed, opts, c.max_trials);
      r.payload = {{"cdf", to_json(v.cdf)},
                   {"acceptance_rate", v.samples.acceptance_rate()},
                   {"partial", v.samples.partial}};
      r.counters = {v.samples.trials, v.samples.accepted, v.samples.truncated};
      if (v.samples.partial) r.flags.push_back("partial");
      break;
    }
    case Estimand::kClusterTail: {
      const TailCurve t =
          estimate_cluster_tail(p, c.t_grid, c.trials, m, c.seed, opts);
      r.payload = to_json(t);
      r.counters = counters_of(t);
      break;
    }
    case Estimand::kIntrinsicArm: {
      const Estimate e = estimate_intrinsic_arm(p, *n, c.trials, m, c.seed, opts);
      r.payload = to_json(e);
      r.counters = counters_of(e);
      break;
    }
    case Estimand::kIntrinsicArmCurve: {
      const TailCurve t =
          estimate_intrinsic_arm_curve(p, c.n_grid, c.trials, m, c.seed, opts);
      r.payload = to_json(t);
      r.counters = counters_of(t);
      break;
    }
    case Estimand::kSpanning: {
      const SpanningEstimate s =
          estimate_spanning(p, *n, c.trials, m, c.seed, opts, c.site_cap);
      json hist = json::array();
      for (const auto& [size, count] : s.size_histogram) {
        hist.push_back({size, count});
      }
      r.payload = to_json(s.count);
      r.payload["size_histogram"] = hist;
      r.counters = counters_of(s.count);
      break;
    }
    case Estimand::kEXD: {
      const Estimate e = estimate_EXD(p, *n, c.trials, m, c.seed, opts);
      r.payload = to_json(e);
      r.counters = counters_of(e);
      break;
    }
    case Estimand::kLDelta: {
      const LDeltaEstimate l =
          estimate_L_delta(p, c.delta, c.n_max, c.trials, m, c.seed, opts, c.z);
      json exd = json::array();
      for (const Estimate& e : l.exd) {
        exd.push_back(to_json(e));
        r.counters.truncated += e.truncated;
      }
      r.payload = {{"value", l.value ? json(*l.value) : json(nullptr)},
                   {"conservative",
                    l.conservative ? json(*l.conservative) : json(nullptr)},
                   {"reached", l.reached()},
                   {"exd", exd}};
      r.counters.trials = c.trials * static_cast<int64_t>(l.exd.size());
      r.counters.accepted = r.counters.trials;
      if (!l.reached()) r.flags.push_back("partial");
      break;
    }
    case Estimand::kXi: {
      const XiEstimate x = estimate_xi(p, c.n_grid, c.trials, m, c.seed, opts,
                                       c.arm_exponent);
      r.payload = {{"xi", x.xi},
                   {"ci", {x.lo, std::isfinite(x.hi) ? json(x.hi) : json(nullptr)}},
                   {"arm_exponent", x.arm_exponent},
                   {"fit", fit_json(x.fit)},
                   {"pi", to_json(x.pi)}};
      r.counters = counters_of(x.pi);
      break;
    }
    case Estimand::kChi: {
      const Estimate e = estimate_chi(p, c.trials, m, c.seed, opts);
      r.payload = to_json(e);
      r.counters = counters_of(e);
      if (!e.warning.empty()) r.flags.push_back("truncation_warning");
      break;
    }
  }
  return r;
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& c) {
  RunReport report;
  const std::string hash = c.hash();
  std::vector<std::optional<int64_t>> ns;
  if (takes_n_cells(c.estimand)) {
    for (int64_t n : c.n_grid) ns.emplace_back(n);
  } else {
    ns.emplace_back(std::nullopt);
  }
  for (double p : c.p_grid) {
    for (const auto& n : ns) {
      json rec = {{"record_type", "estimate"},
                  {"tool_version", PERCOLAB_VERSION},
                  {"config_hash", hash},
                  {"experiment_id", c.experiment_id},
                  {"estimand", to_string(c.estimand)}};
      json cell = {{"p", p}};
      if (n) cell["n"] = *n;
      rec["inputs"] = {{"config", c.canonical},
                       {"cell", cell},
                       {"model", model_to_json(c.model)},
                       {"budget",
                        {{"max_volume", c.budget.max_volume},
                         {"max_intrinsic_radius", c.budget.max_intrinsic_radius}}},
                       {"seed", c.seed},
                       {"first_trial", c.first_trial},
                       {"sampler", sampler_json()}};
      const auto t0 = std::chrono::steady_clock::now();
      try {
        CellResult r = run_cell(c, p, n);
        rec["payload"] = std::move(r.payload);
        rec["counters"] = r.counters.to_json();
        rec["flags"] = r.flags;
      } catch (const ResourceError& e) {
        rec["payload"] = nullptr;
        rec["error"] = e.what();
        rec["flags"] = {"resource_cap"};
        ++report.resource_flagged;
      } catch (const BudgetExceededError& e) {
        rec["payload"] = nullptr;
        rec["error"] = e.what();
        rec["flags"] = {"resource_cap"};
        ++report.resource_flagged;
      } catch (const InsufficientSignalError& e) {
        rec["payload"] = nullptr;
        rec["error"] = e.what();
        rec["flags"] = {"insufficient_signal"};
        ++report.other_flagged;
      }
      rec["wall_time_s"] = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
      rec["workers"] = c.workers;
      report.records.push_back(std::move(rec));
    }
  }
  return report;
}

void append_records(const std::filesystem::path& path,
                    const std::vector<json>& records) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw ResourceError("cannot open " + path.string() + " for append");
  for (const json& r : records) out << r.dump() << '\n';
  if (!out) throw ResourceError("write to " + path.string() + " failed");
}

std::vector<json> read_records(const std::string& pattern,
                               std::vector<std::string>* files) {
  glob_t g{};
  const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  std::vector<std::string> paths;
  if (rc == 0) {
    for (size_t i = 0; i < g.gl_pathc; ++i) paths.emplace_back(g.gl_pathv[i]);
  }
  globfree(&g);
  if (paths.empty()) {
    throw ArgumentError("no files match '" + pattern + "'");
  }
  std::vector<json> out;
  for (const std::string& p : paths) {
    std::ifstream in(p);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        out.push_back(json::parse(line));
      } catch (const json::exception& e) {
        throw ArgumentError(p + ":" + std::to_string(lineno) +
                            ": not a JSON record (" + e.what() + ")");
      }
    }
  }
  if (files) *files = paths;
  return out;
}

std::filesystem::path default_results_dir() {
  if (const char* env = std::getenv("PERCOLAB_RESULTS_DIR"); env && *env) {
    return env;
  }
  return "results";
}

json oracle_suite(const OracleSuiteOptions& o) {
  std::vector<OracleCheck> checks;
  if (!o.empty_catalog) {
    checks = run_identity_catalog();
    RunOptions run;
    run.workers = o.workers;
    run.fault = o.fault;
    const auto est = run_estimator_crosschecks(o.trials, o.seed, run);
    checks.insert(checks.end(), est.begin(), est.end());
  }
  json tests = json::array();
  int passed = 0;
  std::map<std::string, int> by_kind;
  for (const OracleCheck& c : checks) {
    tests.push_back({{"name", c.name},
                     {"kind", c.kind},
                     {"passed", c.passed},
                     {"detail", c.detail}});
    passed += c.passed ? 1 : 0;
    ++by_kind[c.kind];
  }
  const int total = static_cast<int>(checks.size());
  return {{"record_type", "oracle_suite"},
          {"tool_version", PERCOLAB_VERSION},
          {"inputs",
           {{"trials", o.trials},
            {"seed", o.seed},
            {"fault", o.fault == SamplerFault::kNone ? "none" : "skewed"},
            {"empty_catalog", o.empty_catalog}}},
          {"tests", tests},
          {"summary",
           {{"total", total},
            {"passed", passed},
            {"failed", total - passed},
            {"by_kind", by_kind},
            {"vacuous", total == 0}}}};
}

FitSpec FitSpec::from_json(const json& j) {
  Fields f(j, "");
  f.only({"records", "method", "estimand", "p", "x_min", "x_max", "pc",
          "arm_exponent", "bootstrap"});
  FitSpec s;
  if (f.has("records")) s.records = f.string("records");
  s.method = f.string("method");
  if (s.method != "loglog" && s.method != "exp_rate" && s.method != "collapse") {
    throw ConfigError("method", "expected 'loglog', 'exp_rate' or 'collapse'");
  }
  s.estimand = f.string("estimand");
  if (f.has("p")) s.p = f.number("p");
  if (f.has("x_min")) s.x_min = f.number("x_min");
  if (f.has("x_max")) s.x_max = f.number("x_max");
  if (f.has("pc")) s.pc = f.number("pc");
  if (s.method == "collapse" && !s.pc) {
    throw ConfigError("pc", "required for method 'collapse'");
  }
  if (f.has("arm_exponent")) s.arm_exponent = f.number("arm_exponent");
  s.bootstrap = static_cast<int>(f.integer_or("bootstrap", 0, 100000, 200));
  return s;
}

json FitSpec::to_json() const {
  json j = {{"records", records},
            {"method", method},
            {"estimand", estimand},
            {"arm_exponent", arm_exponent},
            {"bootstrap", bootstrap}};
  if (p) j["p"] = *p;
  if (x_min) j["x_min"] = *x_min;
  if (x_max) j["x_max"] = *x_max;
  if (pc) j["pc"] = *pc;
  return j;
}

std::string FitOutput::csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "abscissa,mean,stderr,trials,accepted,truncated\n";
  for (const auto& r : rows) {
    os << r[0] << ',' << r[1] << ',' << r[2] << ','
       << static_cast<int64_t>(r[3]) << ',' << static_cast<int64_t>(r[4]) << ','
       << static_cast<int64_t>(r[5]) << '\n';
  }
  return os.str();
}

namespace {

struct Sample {
  double x;
  json estimate;
};

// Points a record contributes: curves give one per abscissa, scalar records
// one at their n, tau one per target at r = |y - x|_inf.
std::vector<Sample> samples_of(const json& rec) {
  std::vector<Sample> out;
  const json& pl = rec.at("payload");
  if (pl.contains("abscissae")) {
    for (size_t i = 0; i < pl["abscissae"].size(); ++i) {
      out.push_back({pl["abscissae"][i].get<double>(), pl["estimates"][i]});
    }
  } else if (pl.contains("targets")) {
    for (const json& t : pl["targets"]) {
      out.push_back({t["r"].get<double>(), t["estimate"]});
    }
  } else if (pl.contains("mean") && rec["inputs"]["cell"].contains("n")) {
    out.push_back({rec["inputs"]["cell"]["n"].get<double>(), pl});
  } else if (pl.contains("cdf")) {
    return samples_of(json{{"payload", pl["cdf"]}});
  } else if (pl.contains("pi")) {
    return samples_of(json{{"payload", pl["pi"]}});
  }
  return out;
}

}  // namespace

FitOutput fit_records(const FitSpec& spec) {
  if (spec.records.empty()) throw ConfigError("records", "no records glob given");
  std::vector<std::string> files;
  const std::vector<json> all = read_records(spec.records, &files);

  std::set<std::string> seen_estimands;
  std::set<std::string> hashes;
  // p -> abscissa -> (hash, estimate)
  std::map<double, std::map<double, std::pair<std::string, json>>> by_p;
  for (const json& rec : all) {
    if (rec.value("record_type", "") != "estimate") continue;
    seen_estimands.insert(rec.value("estimand", "?"));
    if (rec.value("estimand", "") != spec.estimand) continue;
    if (rec.at("payload").is_null()) continue;
    const double p = rec["inputs"]["cell"]["p"].get<double>();
    if (spec.p && p != *spec.p) continue;
    const std::string h = rec["config_hash"].get<std::string>();
    for (const Sample& s : samples_of(rec)) {
      if (spec.x_min && s.x < *spec.x_min) continue;
      if (spec.x_max && s.x > *spec.x_max) continue;
      auto& slot = by_p[p];
      const auto it = slot.find(s.x);
      if (it != slot.end()) {
        if (it->second.first == h) continue;  // rerun of the same config
        throw ArgumentError("conflicting records at p = " + std::to_string(p) +
                            ", abscissa " + std::to_string(s.x) +
                            " (config hashes " + it->second.first.substr(0, 12) +
                            " and " + h.substr(0, 12) +
                            "); narrow the glob or set 'p'");
      }
      slot.emplace(s.x, std::make_pair(h, s.estimate));
      hashes.insert(h);
    }
  }
  if (by_p.empty()) {
    std::string found;
    for (const auto& e : seen_estimands) found += (found.empty() ? "" : ", ") + e;
    throw ArgumentError("no usable '" + spec.estimand + "' records in " +
                        std::to_string(files.size()) + " file(s); found: " +
                        (found.empty() ? "nothing" : found));
  }

  FitOutput out;
  auto add_row = [&](double x, const json& e) {
    out.rows.push_back({x, e["mean"].get<double>(), e["stderr"].get<double>(),
                        e["trials"].get<double>(), e["accepted"].get<double>(),
                        e["truncated"].get<double>()});
  };
  json payload;
  if (spec.method == "collapse") {
    std::map<double, TailCurve> curves;
    for (const auto& [p, pts] : by_p) {
      TailCurve c;
      c.estimand = spec.estimand;
      for (const auto& [x, he] : pts) {
        c.abscissae.push_back(x);
        Estimate e;
        e.mean = he.second["mean"].get<double>();
        e.std_error = he.second["stderr"].get<double>();
        c.estimates.push_back(e);
        add_row(x, he.second);
      }
      curves.emplace(p, std::move(c));
    }
    CollapseOptions co;
    co.arm_exponent = spec.arm_exponent;
    const CollapseResult r = scaling_collapse(curves, *spec.pc, co);
    payload = {{"dispersion", r.dispersion},
               {"curves_used", r.curves_used},
               {"u_range", {r.u_lo, r.u_hi}}};
  } else {
    if (by_p.size() > 1) {
      throw ArgumentError("records span " + std::to_string(by_p.size()) +
                          " values of p; set 'p' in the fit spec");
    }
    std::vector<FitPoint> pts;
    for (const auto& [x, he] : by_p.begin()->second) {
      const double m = he.second["mean"].get<double>();
      if (m <= 0) continue;
      pts.push_back({x, m, he.second["stderr"].get<double>()});
      add_row(x, he.second);
    }
    FitOptions fo;
    fo.bootstrap = spec.bootstrap;
    const FitResult r =
        spec.method == "loglog" ? loglog_fit(pts, fo) : exp_rate_fit(pts, fo);
    payload = fit_json(r);
  }
  const json spec_json = spec.to_json();
  out.record = {{"record_type", "fit"},
                {"tool_version", PERCOLAB_VERSION},
                {"config_hash", canonical_hash(spec_json)},
                {"estimand", spec.estimand},
                {"inputs",
                 {{"spec", spec_json},
                  {"input_config_hashes",
                   std::vector<std::string>(hashes.begin(), hashes.end())},
                  {"files", files}}},
                {"payload", payload},
                {"counters", {{"points", out.rows.size()}}},
                {"flags", json::array()}};
  return out;
}

PcSpec PcSpec::from_json(const json& j) {
  Fields f(j, "");
  f.only({"$schema", "experiment_id", "model", "n1", "n2", "tolerance",
          "trials", "seed", "lo", "hi", "z", "arm_exponent", "budget",
          "workers", "description"});
  PcSpec s;
  try {
    s.model = model_from_json(f.at("model"), "model");
  } catch (const ConfigError&) {
    throw;
  } catch (const ArgumentError& e) {
    throw ConfigError("model", e.what());
  }
  s.n1 = f.integer("n1", 4, 1 << 20);
  s.n2 = f.integer("n2", 8, 1 << 21);
  if (s.n2 < 2 * s.n1) throw ConfigError("n2", "must be >= 2 n1");
  s.tolerance = f.number("tolerance");
  if (!(s.tolerance > 0)) throw ConfigError("tolerance", "must be positive");
  s.trials = f.integer("trials", 1, int64_t{1} << 40);
  if (!f.has("seed")) throw ConfigError("seed", "required (no clock seeding)");
  s.seed = f.unsigned64("seed");
  if (f.has("lo")) s.lo = f.number("lo");
  if (f.has("hi")) s.hi = f.number("hi");
  if (!(s.lo >= 0 && s.lo < s.hi && s.hi <= 1)) {
    throw ConfigError("lo", "bracket must satisfy 0 <= lo < hi <= 1");
  }
  if (f.has("z")) s.z = f.number("z");
  if (f.has("arm_exponent")) s.arm_exponent = f.number("arm_exponent");
  if (f.has("budget")) {
    Fields b(f.at("budget"), "budget");
    b.only({"max_volume", "max_intrinsic_radius"});
    s.budget.max_volume =
        b.integer_or("max_volume", 1, int64_t{1} << 40, s.budget.max_volume);
    s.budget.max_intrinsic_radius =
        b.integer_or("max_intrinsic_radius", 1, int64_t{1} << 40,
                     s.budget.max_intrinsic_radius);
  }
  s.workers = static_cast<int>(f.integer_or("workers", 1, 1024, 1));
  return s;
}

json PcSpec::to_json() const {
  json j = {{"model", model_to_json(model)},
            {"n1", n1},
            {"n2", n2},
            {"tolerance", tolerance},
            {"trials", trials},
            {"seed", seed},
            {"lo", lo},
            {"hi", hi},
            {"z", z},
            {"budget",
             {{"max_volume", budget.max_volume},
              {"max_intrinsic_radius", budget.max_intrinsic_radius}}}};
  if (arm_exponent) j["arm_exponent"] = *arm_exponent;
  return j;
}

json pc_estimate_record(const PcSpec& s) {
  PcOptions o;
  o.lo = s.lo;
  o.hi = s.hi;
  o.z = s.z;
  o.arm_exponent = s.arm_exponent;
  o.run.workers = s.workers;
  o.run.budget = s.budget;
  const auto t0 = std::chrono::steady_clock::now();
  const PcEstimate r =
      estimate_pc(s.model, s.n1, s.n2, s.tolerance, s.trials, s.seed, o);
  json probes = json::array();
  for (const PcProbe& pr : r.probes) {
    probes.push_back({{"p", pr.p},
                      {"hits_n1", pr.hits_n1},
                      {"hits_n2", pr.hits_n2},
                      {"drift", std::isfinite(pr.drift) ? json(pr.drift)
                                                        : json(nullptr)},
                      {"drift_se", pr.drift_se},
                      {"subcritical", pr.subcritical}});
  }
  const json spec = s.to_json();
  return {{"record_type", "pc_estimate"},
          {"tool_version", PERCOLAB_VERSION},
          {"config_hash", canonical_hash(spec)},
          {"estimand", "p_c"},
          {"inputs", {{"spec", spec}, {"sampler", sampler_json()}}},
          {"payload",
           {{"lo", r.lo},
            {"hi", r.hi},
            {"estimate", r.estimate},
            {"rounds", r.rounds},
            {"probes", probes}}},
          {"counters", {{"trials", s.trials * static_cast<int64_t>(r.probes.size())}}},
          {"flags", json::array()},
          {"wall_time_s", std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - t0)
                              .count()},
          {"workers", s.workers}};
}

}  // namespace percolab
