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

// percolab command line: run | oracle-suite | fit | pc-estimate.
//
// Exit codes: 0 ok, 1 validation, 2 resource cap, 3 oracle failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "percolab/experiment.hpp"

namespace {

using percolab::json;

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kResource = 2;
constexpr int kOracleFailure = 3;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw percolab::ArgumentError("cannot read config " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw percolab::ArgumentError(path + ": invalid JSON (" + e.what() + ")");
  }
}

std::filesystem::path out_path(const std::string& flag,
                               const std::string& name) {
  if (!flag.empty()) return flag;
  return percolab::default_results_dir() / (name + ".jsonl");
}

struct Common {
  std::string config;
  std::string out;
  std::optional<int> workers;
  std::optional<uint64_t> seed;
};

void apply_overrides(json& j, const Common& c) {
  if (c.workers) j["workers"] = *c.workers;
  if (c.seed) j["seed"] = *c.seed;
}

int cmd_run(const Common& c) {
  json j = load_json(c.config);
  apply_overrides(j, c);
  const auto cfg = percolab::ExperimentConfig::from_json(j);
  const auto report = percolab::run_experiment(cfg);
  const auto path = out_path(c.out, cfg.experiment_id);
  percolab::append_records(path, report.records);
  std::cerr << "percolab: " << report.records.size() << " record(s) -> "
            << path.string() << "\n";
  for (const json& r : report.records) {
    if (r.contains("error")) {
      std::cerr << "percolab: flagged cell " << r["inputs"]["cell"].dump()
                << ": " << r["error"].get<std::string>() << "\n";
    }
  }
  return report.resource_flagged ? kResource : kOk;
}

int cmd_oracle(const Common& c, int64_t trials, const std::string& fault,
               bool empty) {
  percolab::OracleSuiteOptions o;
  o.trials = trials;
  if (c.seed) o.seed = *c.seed;
  if (c.workers) o.workers = *c.workers;
  o.empty_catalog = empty;
  if (fault == "skewed") {
    o.fault = percolab::SamplerFault::kSkewed;
  } else if (fault != "none") {
    throw percolab::ArgumentError("unknown fault '" + fault + "'");
  }
  const json report = percolab::oracle_suite(o);
  std::cout << report.dump(2) << "\n";
  if (!c.out.empty()) percolab::append_records(c.out, {report});
  const auto& s = report["summary"];
  std::cerr << "percolab: oracle suite " << s["passed"] << "/" << s["total"]
            << " passed" << (s["vacuous"].get<bool>() ? " (vacuous)" : "")
            << "\n";
  return s["failed"].get<int>() > 0 ? kOracleFailure : kOk;
}

int cmd_fit(const Common& c, const std::string& glob, bool csv) {
  json j = load_json(c.config);
  auto spec = percolab::FitSpec::from_json(j);
  if (!glob.empty()) spec.records = glob;
  const auto out = percolab::fit_records(spec);
  const auto path = out_path(c.out, "fits");
  percolab::append_records(path, {out.record});
  if (csv) {
    std::cout << out.csv();
  } else {
    std::cout << out.record["payload"].dump(2) << "\n";
  }
  return kOk;
}

int cmd_pc(const Common& c) {
  json j = load_json(c.config);
  apply_overrides(j, c);
  const auto spec = percolab::PcSpec::from_json(j);
  const json rec = percolab::pc_estimate_record(spec);
  percolab::append_records(out_path(c.out, "pc_estimate"), {rec});
  std::cout << rec["payload"].dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"percolab: bond percolation laboratory"};
  app.set_version_flag("--version", std::string(PERCOLAB_VERSION));
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", common.config, "config JSON file");
    if (config_required) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--out", common.out, "JSONL output file (appended)");
    sub->add_option("--workers", common.workers, "worker threads")
        ->check(CLI::Range(1, 1024));
    sub->add_option("--seed", common.seed, "seed override");
  };

  auto* run = app.add_subcommand("run", "run an experiment config");
  add_common(run, true);

  auto* oracle = app.add_subcommand("oracle-suite",
                                    "exact identity audits and estimator checks");
  add_common(oracle, false);
  int64_t trials = 100'000;
  std::string fault = "none";
  bool empty = false;
  oracle->add_option("--trials", trials, "Monte Carlo trials per estimator check")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--fault", fault, "sampler fault injection (none|skewed)");
  oracle->add_flag("--empty-catalog", empty, "run with no fixtures");

  auto* fit = app.add_subcommand("fit", "fit records from a glob");
  add_common(fit, true);
  std::string glob;
  bool csv = false;
  fit->add_option("records", glob, "records glob (overrides the spec)");
  fit->add_flag("--csv", csv, "print the fitted points as CSV");

  auto* pc = app.add_subcommand("pc-estimate", "bisection estimate of p_c");
  add_common(pc, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (*run) return cmd_run(common);
    if (*oracle) return cmd_oracle(common, trials, fault, empty);
    if (*fit) return cmd_fit(common, glob, csv);
    if (*pc) return cmd_pc(common);
  } catch (const percolab::ResourceError& e) {
    std::cerr << "percolab: resource cap: " << e.what() << "\n";
    return kResource;
  } catch (const percolab::BudgetExceededError& e) {
    std::cerr << "percolab: resource cap: " << e.what() << "\n";
    return kResource;
  } catch (const percolab::Error& e) {
    std::cerr << "percolab: " << e.what() << "\n";
    return kValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "percolab: " << e.what() << "\n";
    return kResource;
  }
  return kValidation;
}
