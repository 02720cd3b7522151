"""
Fixtures running the commands on a small simulated network inside temporary directories.
"""

# pylint: disable=redefined-outer-name

import asyncio
import json
import os
from typing import Any, Dict

import pytest

from hdp_lpcm.commands import fit, simulate

SIM_N = 12
SIM_T = 3
SIM_SPEC = {"n": SIM_N, "T": SIM_T, "const_per_time": [20.0] * SIM_T, "active_sets": [[1, 2, 3]] * SIM_T}
SAMPLER = {"n_tune": 4, "n_burn": 2, "n_keep": 6, "L": 3, "n_init_sweeps": 5, "tune_interval": 2}


def write_config(path: str, data: Dict[str, Any]) -> str:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f)
    return path


@pytest.fixture
def tmp_cwd(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


@pytest.fixture
def simulation_config(tmp_path) -> str:
    return write_config(str(tmp_path / "simulation.json"), {"spec": SIM_SPEC})


@pytest.fixture
def fit_config(tmp_path) -> str:
    return write_config(str(tmp_path / "fit.json"), {"sampler": SAMPLER})


@pytest.fixture
def simulated_run(tmp_path, simulation_config) -> str:
    out = str(tmp_path / "simulated")
    simulate(config_path=simulation_config, seed=8, out=out)
    return out


@pytest.fixture
def fitted_run(tmp_path, simulated_run, fit_config) -> str:
    out = str(tmp_path / "fitted")
    asyncio.run(
        fit(
            input_path=os.path.join(simulated_run, "edges.csv"),
            config_path=fit_config,
            seed=3,
            out=out,
            n=SIM_N,
            T=SIM_T,
        )
    )
    return out
