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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "percolab/crosscheck.hpp"
#include "percolab/estimators.hpp"
#include "percolab/experiment.hpp"
#include "percolab/explorer.hpp"
#include "percolab/oracle.hpp"
#include "percolab/sampler.hpp"
#include "percolab/scaling.hpp"

namespace py = pybind11;
using namespace percolab;

namespace {

Vertex to_vertex(const std::vector<int32_t>& c) { return Vertex(c); }

LatticeModel make_model(int d, int lambda) {
  return lambda > 0 ? LatticeModel::spread_out(d, lambda)
                    : LatticeModel::nearest_neighbor(d);
}

SamplerConfig make_cfg(const LatticeModel& m, uint64_t seed, uint64_t trial) {
  SamplerConfig cfg;
  cfg.seed = seed;
  cfg.trial = trial;
  cfg.model = m;
  return cfg;
}

RunOptions run_opts(int workers) {
  RunOptions o;
  o.workers = workers;
  return o;
}

py::dict estimate_dict(const Estimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["stderr"] = e.std_error;
  d["trials"] = e.trials;
  d["accepted"] = e.accepted;
  d["truncated"] = e.truncated;
  if (!e.warning.empty()) d["warning"] = e.warning;
  return d;
}

py::object from_json(const json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

json to_json_obj(const py::object& o) {
  return json::parse(
      py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_percolab, m) {
  m.doc() = "Bond percolation on Z^d: sampler, explorer, estimators, oracle";
  m.attr("__version__") = PERCOLAB_VERSION;

  // Later registrations are tried first, so the base class goes first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);

  py::class_<LatticeModel>(m, "LatticeModel")
      .def(py::init(&make_model), py::arg("d"), py::arg("spread") = 0)
      .def_readonly("d", &LatticeModel::d)
      .def_readonly("spread", &LatticeModel::lambda)
      .def("degree", &LatticeModel::degree)
      .def("__repr__", &LatticeModel::name);

  m.def("neighbors",
        [](const std::vector<int32_t>& v, const LatticeModel& model) {
          std::vector<std::vector<int32_t>> out;
          for (const Vertex& w : neighbors(to_vertex(v), model)) {
            out.push_back(w.coords());
          }
          return out;
        },
        py::arg("v"), py::arg("model"));

  m.def("uniform",
        [](const LatticeModel& model, uint64_t seed, uint64_t trial,
           const std::vector<int32_t>& a, const std::vector<int32_t>& b) {
          return uniform(make_cfg(model, seed, trial),
                         Edge(to_vertex(a), to_vertex(b)));
        },
        py::arg("model"), py::arg("seed"), py::arg("trial"), py::arg("a"),
        py::arg("b"));

  m.def("explore",
        [](const LatticeModel& model, double p, uint64_t seed, uint64_t trial,
           int32_t box_radius) {
          const Region r = box_radius < 0 ? Region::full(model.d)
                                          : Region::box(model.d, box_radius);
          ExploreOptions eo;
          eo.collect_boundary_hits = box_radius >= 0;
          const ClusterReport rep = explore(Vertex::origin(model.d), r, p,
                                            make_cfg(model, seed, trial), eo);
          py::dict d;
          d["volume"] = rep.volume;
          d["extrinsic_radius"] = rep.extrinsic_radius;
          d["intrinsic_radius"] = rep.intrinsic_radius;
          d["boundary_hits"] = rep.boundary_hits.size();
          d["truncated"] = to_string(rep.truncated);
          return d;
        },
        py::arg("model"), py::arg("p"), py::arg("seed"), py::arg("trial") = 0,
        py::arg("box_radius") = -1);

  m.def("spanning_census",
        [](const LatticeModel& model, int64_t n, double p, uint64_t seed,
           uint64_t trial) {
          const SpanningCensus c =
              spanning_census(n, p, make_cfg(model, seed, trial));
          return py::make_tuple(c.count, c.sizes);
        },
        py::arg("model"), py::arg("n"), py::arg("p"), py::arg("seed"),
        py::arg("trial") = 0);

  m.def("estimate_pi",
        [](double p, int64_t n, int64_t trials, const LatticeModel& model,
           uint64_t seed, int workers) {
          return estimate_dict(
              estimate_pi(p, n, trials, model, seed, run_opts(workers)));
        },
        py::arg("p"), py::arg("n"), py::arg("trials"), py::arg("model"),
        py::arg("seed"), py::arg("workers") = 1);

  m.def("estimate_tau",
        [](double p, const std::vector<int32_t>& x,
           const std::vector<int32_t>& y, int64_t trials,
           const LatticeModel& model, uint64_t seed, bool half_space) {
          const Region r = half_space ? Region::positive_half_space(model.d)
                                      : Region::full(model.d);
          return estimate_dict(estimate_tau(p, to_vertex(x), to_vertex(y), r,
                                            trials, model, seed));
        },
        py::arg("p"), py::arg("x"), py::arg("y"), py::arg("trials"),
        py::arg("model"), py::arg("seed"), py::arg("half_space") = false);

  m.def("estimate_EXD",
        [](double p, int64_t n, int64_t trials, const LatticeModel& model,
           uint64_t seed) {
          return estimate_dict(estimate_EXD(p, n, trials, model, seed));
        },
        py::arg("p"), py::arg("n"), py::arg("trials"), py::arg("model"),
        py::arg("seed"));

  m.def("estimate_chi",
        [](double p, int64_t trials, const LatticeModel& model, uint64_t seed) {
          return estimate_dict(estimate_chi(p, trials, model, seed));
        },
        py::arg("p"), py::arg("trials"), py::arg("model"), py::arg("seed"));

  m.def("estimate_spanning",
        [](double p, int64_t n, int64_t trials, const LatticeModel& model,
           uint64_t seed) {
          return estimate_dict(
              estimate_spanning(p, n, trials, model, seed).count);
        },
        py::arg("p"), py::arg("n"), py::arg("trials"), py::arg("model"),
        py::arg("seed"));

  m.def("estimate_xi",
        [](double p, const std::vector<int64_t>& n_grid, int64_t trials,
           const LatticeModel& model, uint64_t seed) {
          const XiEstimate x = estimate_xi(p, n_grid, trials, model, seed);
          return py::make_tuple(x.xi, x.lo, x.hi);
        },
        py::arg("p"), py::arg("n_grid"), py::arg("trials"), py::arg("model"),
        py::arg("seed"));

  m.def("loglog_fit",
        [](const std::vector<double>& x, const std::vector<double>& y,
           std::vector<double> se, bool exponential) {
          if (x.size() != y.size()) throw ArgumentError("x and y differ in length");
          se.resize(x.size(), 0.0);
          std::vector<FitPoint> pts;
          for (size_t i = 0; i < x.size(); ++i) pts.push_back({x[i], y[i], se[i]});
          const FitResult f = exponential ? exp_rate_fit(pts) : loglog_fit(pts);
          py::dict d;
          d["slope"] = f.slope;
          d["intercept"] = f.intercept;
          d["r_squared"] = f.r_squared;
          d["slope_ci"] = py::make_tuple(f.slope_lo, f.slope_hi);
          return d;
        },
        py::arg("x"), py::arg("y"), py::arg("stderr") = std::vector<double>{},
        py::arg("exponential") = false);

  m.def("connection_probability",
        [](const std::vector<int32_t>& lo, const std::vector<int32_t>& hi,
           const std::vector<int32_t>& x, const std::vector<int32_t>& y,
           const std::string& p) {
          const Region r = Region::cuboid(to_vertex(lo), to_vertex(hi));
          const auto g = FiniteGraph::from_region(
              r, LatticeModel::nearest_neighbor(static_cast<int>(lo.size())));
          const Rational q(p);
          const Rational v =
              event_polynomial(g, connection_event(g, to_vertex(x), to_vertex(y)))(q);
          return v.str();
        },
        py::arg("lo"), py::arg("hi"), py::arg("x"), py::arg("y"),
        py::arg("p") = "1/2",
        "Exact P(x <-> y) inside the cuboid [lo, hi] as a rational string.");

  m.def("oracle_suite",
        [](int64_t trials, uint64_t seed, bool empty) {
          OracleSuiteOptions o;
          o.trials = trials;
          o.seed = seed;
          o.empty_catalog = empty;
          return from_json(oracle_suite(o));
        },
        py::arg("trials") = 100'000, py::arg("seed") = 1,
        py::arg("empty_catalog") = false);

  m.def("run_experiment",
        [](const py::object& config) {
          const auto cfg = ExperimentConfig::from_json(to_json_obj(config));
          return from_json(json(run_experiment(cfg).records));
        },
        py::arg("config"), "Runs a config dict; returns the result records.");
}
