# pylint: disable=unused-argument, unused-import, redefined-outer-name, protected-access, missing-module-docstring, missing-class-docstring
# pyright: reportGeneralTypeIssues=false

import json
import os

import numpy as np
import pytest
from pydantic import ValidationError

from hdp_lpcm.commands import simulate
from hdp_lpcm.commands.utils.defaults import DEFAULT_OUT_DIR, MANIFEST_FILENAME
from hdp_lpcm.exceptions import InvalidArgumentsError, UnknownPresetError
from hdp_lpcm.simulation import read_bundle_network, read_truth_labels
from tests.fixtures.runs import SIM_N, SIM_T, simulated_run, simulation_config, tmp_cwd, write_config


def test_simulate_from_config(simulated_run):
    files = sorted(os.listdir(simulated_run))
    assert files == ["bundle.json", "edges.csv", "manifest.json", "spec.json", "truth_labels.csv", "truth_positions.csv"]

    with open(os.path.join(simulated_run, MANIFEST_FILENAME), "r", encoding="utf-8") as f:
        manifest = json.load(f)
    assert manifest["command"] == "simulate"
    assert manifest["seed"] == 8
    assert manifest["config"]["spec"]["n"] == SIM_N
    assert manifest["config"]["replications"] == 1

    labels = read_truth_labels(os.path.join(simulated_run, "truth_labels.csv"))
    assert labels.Z.shape == (SIM_T, SIM_N)
    assert read_bundle_network(simulated_run, SIM_N, SIM_T).adjacency.shape == (SIM_T, SIM_N, SIM_N)


def test_same_seed_same_network(tmp_path, simulation_config):
    simulate(config_path=simulation_config, seed=2, out=str(tmp_path / "a"))
    simulate(config_path=simulation_config, seed=2, out=str(tmp_path / "b"))

    assert (tmp_path / "a" / "edges.csv").read_text() == (tmp_path / "b" / "edges.csv").read_text()


def test_replications(tmp_path, simulation_config):
    bundle = simulate(config_path=simulation_config, seed=4, out=str(tmp_path / "out"), replications=3)

    assert sorted(os.listdir(tmp_path / "out")) == ["manifest.json", "replication-001", "replication-002", "replication-003"]
    assert bundle["seed"] == 6
    with open(tmp_path / "out" / "replication-002" / "bundle.json", "r", encoding="utf-8") as f:
        assert json.load(f)["seed"] == 5


def test_preset_with_overrides(tmp_path):
    config = write_config(str(tmp_path / "small.json"), {"spec": {"n": 20}})
    bundle = simulate("inhomogeneous", config_path=config, out=str(tmp_path / "out"))

    assert bundle["n"] == 20
    assert bundle["T"] == 9
    labels = read_truth_labels(str(tmp_path / "out" / "truth_labels.csv"))
    assert set(labels.Z[0]) <= {0, 1}


def test_default_output_directory(tmp_cwd, simulation_config):
    simulate(config_path=simulation_config)

    assert os.path.isfile(os.path.join(tmp_cwd, DEFAULT_OUT_DIR, "edges.csv"))


def test_unknown_preset(tmp_path):
    with pytest.raises(UnknownPresetError):
        simulate("heterogeneous", out=str(tmp_path / "out"))


def test_invalid_scenario(tmp_path):
    config = write_config(str(tmp_path / "bad.json"), {"spec": {"n": 10, "T": 2}})

    with pytest.raises(ValidationError):
        simulate(config_path=config, out=str(tmp_path / "out"))
    assert not os.path.exists(tmp_path / "out")


def test_refuses_a_non_empty_directory(tmp_path, simulation_config):
    (tmp_path / "out").mkdir()
    (tmp_path / "out" / "notes.txt").write_text("keep me")

    with pytest.raises(InvalidArgumentsError):
        simulate(config_path=simulation_config, out=str(tmp_path / "out"))
    assert os.listdir(tmp_path / "out") == ["notes.txt"]
