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

// Config-driven experiment runs and their on-disk records. A run expands the
// grid Cartesian product of a validated ExperimentConfig into one
// ResultRecord (a JSON object, one per JSONL line) per cell.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "percolab/errors.hpp"
#include "percolab/estimate.hpp"
#include "percolab/lattice.hpp"
#include "percolab/region.hpp"
#include "percolab/sampler.hpp"

namespace percolab {

using json = nlohmann::json;

inline constexpr const char* kConfigSchemaId =
    "https://percolab.dev/schema/experiment-config/v1.json";

// Validation failure; `field` is the offending config key path.
class ConfigError : public ArgumentError {
 public:
  ConfigError(std::string field, const std::string& what);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class Estimand {
  kPi,
  kPiCurve,
  kTau,
  kSnTails,
  kVolumeTail,
  kClusterTail,
  kIntrinsicArm,
  kIntrinsicArmCurve,
  kSpanning,
  kEXD,
  kLDelta,
  kXi,
  kChi,
};

std::string to_string(Estimand e);
Estimand parse_estimand(const std::string& s);

struct ExperimentConfig {
  std::string experiment_id;
  Estimand estimand = Estimand::kPi;
  LatticeModel model;
  std::vector<double> p_grid;
  // Scalar estimands: one cell per n. Curve estimands and xi: the curve grid.
  std::vector<int64_t> n_grid;
  std::vector<double> lambda_grid;
  std::vector<int64_t> t_grid;
  int64_t trials = 0;
  int64_t min_accepted = 0;
  int64_t max_trials = 10'000'000;
  Budget budget;
  uint64_t seed = 0;
  uint64_t first_trial = 0;
  int workers = 1;
  // tau
  std::optional<Vertex> x;
  std::vector<Vertex> ys;
  std::optional<Region> region;
  json region_spec;
  // L_delta
  double delta = 0.0;
  int64_t n_max = 0;
  double z = 1.96;
  // xi
  std::optional<double> arm_exponent;
  // spanning
  uint64_t site_cap = 0;

  // Echo of the effective config (after overrides), without `workers`.
  json canonical;

  // Throws ConfigError naming the field.
  static ExperimentConfig from_json(const json& j);
  std::string hash() const;
};

LatticeModel model_from_json(const json& j, const std::string& field);
json model_to_json(const LatticeModel& m);

// Lowercase hex SHA-256 of j.dump() (object keys are sorted).
std::string canonical_hash(const json& j);

json to_json(const Estimate& e);
json to_json(const TailCurve& c);

struct RunReport {
  std::vector<json> records;
  int resource_flagged = 0;
  int other_flagged = 0;
};

// Runs every cell; resource-cap and signal failures become flagged records.
RunReport run_experiment(const ExperimentConfig& cfg);

// Appends one line per record. Creates parent directories.
void append_records(const std::filesystem::path& path,
                    const std::vector<json>& records);
std::vector<json> read_records(const std::string& glob_pattern,
                               std::vector<std::string>* files = nullptr);

// $PERCOLAB_RESULTS_DIR or ./results.
std::filesystem::path default_results_dir();

struct OracleSuiteOptions {
  int64_t trials = 100'000;
  uint64_t seed = 1;
  int workers = 1;
  SamplerFault fault = SamplerFault::kNone;
  bool empty_catalog = false;
};

json oracle_suite(const OracleSuiteOptions& opts);

struct FitSpec {
  std::string records;  // glob
  std::string method;   // "loglog", "exp_rate", "collapse"
  std::string estimand;
  std::optional<double> p;  // select records at this p
  std::optional<double> x_min;
  std::optional<double> x_max;
  std::optional<double> pc;  // collapse
  double arm_exponent = 2.0;
  int bootstrap = 200;

  static FitSpec from_json(const json& j);
  json to_json() const;
};

struct FitOutput {
  json record;
  // abscissa, mean, stderr, trials, accepted, truncated
  std::vector<std::vector<double>> rows;
  std::string csv() const;
};

FitOutput fit_records(const FitSpec& spec);

struct PcSpec {
  LatticeModel model;
  int64_t n1 = 8;
  int64_t n2 = 16;
  double tolerance = 0.1;
  int64_t trials = 0;
  uint64_t seed = 0;
  double lo = 0.0;
  double hi = 1.0;
  double z = 2.0;
  std::optional<double> arm_exponent;
  Budget budget;
  int workers = 1;

  static PcSpec from_json(const json& j);
  json to_json() const;
};

json pc_estimate_record(const PcSpec& spec);

}  // namespace percolab
