# pylint: disable=unused-argument, unused-import, redefined-outer-name, protected-access, missing-module-docstring, missing-class-docstring
# pyright: reportGeneralTypeIssues=false

import json
import os

import numpy as np
import pytest

from hdp_lpcm.sampling import make_rng
from hdp_lpcm.simulation import (
    homogeneous_spec,
    read_bundle_network,
    read_truth_labels,
    read_truth_positions,
    simulate_from_spec,
    write_bundle,
)


@pytest.fixture
def simulated():
    spec = homogeneous_spec(n=12, T=3, const_per_time=[20.0] * 3, active_sets=[[1, 2, 3]] * 3, seed=4)
    return spec, simulate_from_spec(spec, make_rng(spec.seed))


def test_bundle_files(tmp_path, simulated):
    spec, result = simulated
    manifest = write_bundle(result, spec, str(tmp_path))

    assert sorted(os.listdir(tmp_path)) == [
        "bundle.json",
        "edges.csv",
        "spec.json",
        "truth_labels.csv",
        "truth_positions.csv",
    ]
    assert manifest["n"] == 12 and manifest["T"] == 3
    assert manifest["seed"] == 4
    assert manifest["groups_per_time"] == result.truth.labels.n_occupied().tolist()
    assert json.loads((tmp_path / "bundle.json").read_text(encoding="utf-8")) == manifest

    echoed = json.loads((tmp_path / "spec.json").read_text(encoding="utf-8"))
    assert echoed["n"] == 12
    assert echoed["group_locations"][1] == [1.5, 0.0]


def test_bundle_is_read_back(tmp_path, simulated):
    spec, result = simulated
    write_bundle(result, spec, str(tmp_path))

    labels = read_truth_labels(str(tmp_path / "truth_labels.csv"))
    positions = read_truth_positions(str(tmp_path / "truth_positions.csv"))
    net = read_bundle_network(str(tmp_path), n=12, T=3)

    assert np.array_equal(labels.Z, result.truth.labels.Z)
    assert np.allclose(positions.X, result.truth.positions.X, atol=1e-12)
    assert np.array_equal(net.adjacency, result.net.adjacency)
