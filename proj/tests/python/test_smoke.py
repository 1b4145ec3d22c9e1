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

"""Smoke tests for the Python module and the command-line tool."""

import json
import os
import pathlib
import subprocess
from fractions import Fraction

import pytest

import percolab

ROOT = pathlib.Path(__file__).resolve().parents[2]
FIXTURES = ROOT / "tests" / "fixtures"
CONFIG_DIR = pathlib.Path(os.environ.get("PERCOLAB_CONFIG_DIR", ROOT / "configs"))
SCHEMA = pathlib.Path(
    os.environ.get("PERCOLAB_SCHEMA", ROOT / "schema" / "experiment-config.schema.json")
)
CLI = os.environ.get("PERCOLAB_CLI")


def test_model_and_neighbors():
    m = percolab.LatticeModel(2)
    assert m.degree() == 4
    assert sorted(percolab.neighbors([0, 0], m)) == [[-1, 0], [0, -1], [0, 1], [1, 0]]
    assert percolab.LatticeModel(1, spread=2).degree() == 4


def test_sampler_matches_fixture_vectors():
    data = json.loads((FIXTURES / "sampler_vectors.json").read_text())
    for v in data["vectors"]:
        model = v["model"]
        m = percolab.LatticeModel(model["d"], spread=model.get("lambda", 0))
        u = percolab.uniform(m, int(v["seed"]), int(v["trial"]), v["a"], v["b"])
        assert u == float.fromhex(v["uniform"])


def test_exact_connection_probability():
    # Opposite corners of the unit square: 2p^2 - p^4.
    assert Fraction(percolab.connection_probability([0, 0], [1, 1], [0, 0], [1, 1])) == Fraction(
        7, 16
    )
    got = Fraction(percolab.connection_probability([0, 0], [1, 1], [0, 0], [1, 1], p="1/3"))
    assert got == 2 * Fraction(1, 9) - Fraction(1, 81)


def test_estimators_on_the_line():
    line = percolab.LatticeModel(1)
    chi = percolab.estimate_chi(0.5, 100_000, line, 3)
    assert abs(chi["mean"] - 3.0) <= 4 * chi["stderr"]
    span = percolab.estimate_spanning(0.5, 1, 100_000, line, 4)
    assert abs(span["mean"] - 0.25) <= 4 * span["stderr"]
    xi, lo, hi = percolab.estimate_xi(0.5, [4, 6, 8, 10, 12], 200_000, line, 5)
    assert lo <= xi <= hi
    pi = percolab.estimate_pi(1.0, 3, 10, percolab.LatticeModel(3), 1, workers=2)
    assert pi["mean"] == 1.0


def test_explore_and_census():
    rep = percolab.explore(percolab.LatticeModel(2), 1.0, 1, box_radius=2)
    assert rep["volume"] == 25
    assert rep["boundary_hits"] == 16
    count, sizes = percolab.spanning_census(percolab.LatticeModel(2), 2, 1.0, 1)
    assert count == 1 and sizes == [25]


def test_fit_and_errors():
    f = percolab.loglog_fit([1, 2, 4, 8], [1, 0.25, 0.0625, 0.015625])
    assert f["slope"] == pytest.approx(-2.0)
    with pytest.raises(ValueError):
        percolab.estimate_pi(1.5, 2, 10, percolab.LatticeModel(2), 1)
    with pytest.raises(ValueError):
        percolab.LatticeModel(0)


def test_oracle_suite_from_python():
    report = percolab.oracle_suite(trials=20_000)
    assert report["summary"]["failed"] == 0
    assert percolab.oracle_suite(empty_catalog=True)["summary"]["vacuous"]


def test_run_experiment_dict():
    recs = percolab.run_experiment(
        {
            "experiment_id": "py",
            "estimand": "EXD",
            "model": {"d": 2},
            "p": 1.0,
            "n": 2,
            "trials": 10,
            "seed": 1,
        }
    )
    assert len(recs) == 1
    assert recs[0]["payload"]["mean"] == 16.0
    with pytest.raises(ValueError, match="seed"):
        percolab.run_experiment(
            {"experiment_id": "py", "estimand": "pi", "model": {"d": 1}, "p": 0.5, "n": 1,
             "trials": 10}
        )


def experiment_configs():
    return sorted(CONFIG_DIR.glob("*.json"))


def test_configs_validate_against_schema():
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(SCHEMA.read_text())
    assert schema["$id"].endswith("/v1.json")
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    configs = experiment_configs()
    assert configs
    for path in configs:
        cfg = json.loads(path.read_text())
        validator.validate(cfg)
        assert cfg.get("$schema", schema["$id"]) == schema["$id"]
    bad = json.loads(configs[0].read_text())
    bad["unexpected"] = 1
    assert not validator.is_valid(bad)
    del bad["unexpected"]
    del bad["seed"]
    assert not validator.is_valid(bad)


needs_cli = pytest.mark.skipif(not CLI, reason="PERCOLAB_CLI not set")


def cli(*args, env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env)


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@needs_cli
def test_cli_run_fit_and_exit_codes(tmp_path):
    cfg = {
        "experiment_id": "cli_pi",
        "estimand": "pi",
        "model": {"d": 1},
        "p": 0.5,
        "n_grid": [1, 2, 3, 4],
        "trials": 20000,
        "seed": 11,
    }
    results = tmp_path / "results"
    env = {"PERCOLAB_RESULTS_DIR": str(results)}
    r = cli("run", "--config", write(tmp_path / "c.json", cfg), env=env)
    assert r.returncode == 0, r.stderr
    lines = (results / "cli_pi.jsonl").read_text().splitlines()
    assert len(lines) == 4
    rec = json.loads(lines[0])
    assert rec["record_type"] == "estimate" and len(rec["config_hash"]) == 64

    r = cli("run", "--config", str(tmp_path / "c.json"), "--workers", "3", env=env)
    assert r.returncode == 0
    again = (results / "cli_pi.jsonl").read_text().splitlines()
    assert len(again) == 8
    assert json.loads(again[4])["payload"] == json.loads(lines[0])["payload"]

    spec = write(tmp_path / "f.json", {"method": "exp_rate", "estimand": "pi"})
    r = cli("fit", str(results / "*.jsonl"), "--config", spec, "--csv", env=env)
    assert r.returncode == 0, r.stderr
    header, *rows = r.stdout.strip().splitlines()
    assert header == "abscissa,mean,stderr,trials,accepted,truncated"
    assert len(rows) == 4
    assert (results / "fits.jsonl").exists()

    bad = dict(cfg, p=2.0)
    r = cli("run", "--config", write(tmp_path / "bad.json", bad), env=env)
    assert r.returncode == 1
    assert "p" in r.stderr

    capped = dict(cfg, estimand="spanning", model={"d": 2}, n_grid=[1, 40], site_cap=1000,
                  trials=5)
    r = cli("run", "--config", write(tmp_path / "cap.json", capped), env=env)
    assert r.returncode == 2
    assert len((results / "cli_pi.jsonl").read_text().splitlines()) == 10


@needs_cli
def test_cli_oracle_suite_exit_codes(tmp_path):
    r = cli("oracle-suite", "--trials", "20000")
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["summary"]["failed"] == 0
    r = cli("oracle-suite", "--trials", "20000", "--fault", "skewed")
    assert r.returncode == 3
    r = cli("oracle-suite", "--empty-catalog")
    assert r.returncode == 0
    assert json.loads(r.stdout)["summary"]["vacuous"] is True


@needs_cli
def test_cli_pc_estimate(tmp_path):
    spec = {"model": {"d": 1}, "n1": 4, "n2": 16, "tolerance": 0.1, "trials": 5000, "seed": 1}
    out = tmp_path / "pc.jsonl"
    r = cli("pc-estimate", "--config", write(tmp_path / "pc.json", spec), "--out", str(out))
    assert r.returncode == 0, r.stderr
    rec = json.loads(out.read_text())
    assert rec["record_type"] == "pc_estimate"
    assert rec["payload"]["hi"] == 1.0
