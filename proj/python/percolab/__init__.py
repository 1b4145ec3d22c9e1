# Copyright 2026 The percolab Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Bond percolation on Z^d: counter-based sampler, cluster explorer,
Monte Carlo estimators, scaling fits and an exact small-graph oracle."""

from ._percolab import (
    ArgumentError,
    Error,
    LatticeModel,
    ResourceError,
    __version__,
    connection_probability,
    estimate_chi,
    estimate_EXD,
    estimate_pi,
    estimate_spanning,
    estimate_tau,
    estimate_xi,
    explore,
    loglog_fit,
    neighbors,
    oracle_suite,
    run_experiment,
    spanning_census,
    uniform,
)

__all__ = [
    "ArgumentError",
    "Error",
    "LatticeModel",
    "ResourceError",
    "__version__",
    "connection_probability",
    "estimate_chi",
    "estimate_EXD",
    "estimate_pi",
    "estimate_spanning",
    "estimate_tau",
    "estimate_xi",
    "explore",
    "loglog_fit",
    "neighbors",
    "oracle_suite",
    "run_experiment",
    "spanning_census",
    "uniform",
]
