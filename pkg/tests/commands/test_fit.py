# pylint: disable=unused-argument, unused-import, redefined-outer-name, protected-access, missing-module-docstring, missing-class-docstring
# pyright: reportGeneralTypeIssues=false

import json
import os
import shutil

import pytest
from pydantic import ValidationError

from hdp_lpcm.commands import fit, summarize
from hdp_lpcm.commands.utils.parallel import chain_seeds
from hdp_lpcm.sampling import read_chain
from hdp_lpcm.summary import read_table
from tests.fixtures.runs import (
    SIM_N,
    SIM_T,
    fit_config,
    fitted_run,
    simulated_run,
    simulation_config,
)


def read_json(path):
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def test_fit_outputs(fitted_run):
    assert sorted(os.listdir(fitted_run)) == ["actors.csv", "chain-1.jsonl", "manifest.json", "network.csv", "report.json"]

    report = read_json(os.path.join(fitted_run, "report.json"))
    assert (report["n"], report["T"]) == (SIM_N, SIM_T)
    assert report["runtime_seconds"] >= 0
    assert len(report["chains"]) == 1
    assert report["chains"][0]["samples"] == 6
    assert report["chains"][0]["seed"] == 3
    assert not report["chains"][0]["interrupted"]
    assert set(report["chains"][0]["acceptance"]) == {"tune", "keep"}
    assert report["chains"][0]["final_hyperparams"]["rho"] > 0

    manifest = read_json(os.path.join(fitted_run, "manifest.json"))
    assert manifest["command"] == "fit"
    assert manifest["seed"] == 3
    assert manifest["config"]["sampler"]["n_keep"] == 6
    assert "chain-1.jsonl" in manifest["outputs"]

    chain = read_chain(os.path.join(fitted_run, "chain-1.jsonl"))
    assert (chain.n, chain.T) == (SIM_N, SIM_T)
    assert len(chain.samples) == 6


@pytest.mark.asyncio
async def test_several_chains(tmp_path, simulated_run, fit_config, fitted_run, monkeypatch):
    monkeypatch.setenv("HDP_LPCM_WORKERS", "2")
    chains = await fit(
        os.path.join(simulated_run, "edges.csv"),
        config_path=fit_config,
        seed=3,
        out=str(tmp_path / "two"),
        chains=2,
        n=SIM_N,
        T=SIM_T,
        chain_format="bin",
    )

    assert [chain.rng_provenance.seed for chain in chains] == chain_seeds(3, 2)
    assert sorted(os.listdir(tmp_path / "two"))[:2] == ["actors.csv", "chain-1.bin"]
    assert os.path.isfile(tmp_path / "two" / "chain-2.bin")
    assert chains[0].log_post != chains[1].log_post

    # the first chain runs on the run seed itself
    single = read_chain(os.path.join(fitted_run, "chain-1.jsonl"))
    assert chains[0].log_post == single.log_post


@pytest.mark.asyncio
async def test_window_and_degree_filter(tmp_path, fit_config):
    edges = tmp_path / "edges.csv"
    edges.write_text("t,i,j\n1,1,2\n2,2,3\n3,4,5\n", encoding="utf-8")

    chains = await fit(str(edges), config_path=fit_config, out=str(tmp_path / "out"), n=6, T=3, window=2, min_degree=1)

    assert (chains[0].n, chains[0].T) == (5, 2)
    actors = read_table(str(tmp_path / "out" / "actors.csv"))
    assert actors["original"].tolist() == [1, 2, 3, 4, 5]


@pytest.mark.asyncio
async def test_resume_from_checkpoints(tmp_path, simulated_run, fit_config):
    out = str(tmp_path / "out")
    arguments = {
        "input_path": os.path.join(simulated_run, "edges.csv"),
        "config_path": fit_config,
        "out": out,
        "n": SIM_N,
        "T": SIM_T,
        "checkpoint_every": 5,
    }

    first = await fit(**arguments)
    assert os.path.isfile(f"{out}.checkpoints/chain-1.checkpoint.json")

    shutil.rmtree(out)
    resumed = await fit(**arguments, resume=True)

    assert resumed[0].log_post == first[0].log_post


@pytest.mark.asyncio
async def test_missing_input(tmp_path, fit_config):
    with pytest.raises(ValidationError):
        await fit(str(tmp_path / "missing.csv"), config_path=fit_config, out=str(tmp_path / "out"))


@pytest.mark.asyncio
async def test_summary_storage(tmp_path, simulated_run, fit_config, fitted_run):
    out = tmp_path / "summary-storage"
    chains = await fit(
        os.path.join(simulated_run, "edges.csv"),
        config_path=fit_config,
        seed=3,
        out=str(out),
        n=SIM_N,
        T=SIM_T,
        storage="summary",
    )
    assert len(chains) == 1

    full = read_chain(os.path.join(fitted_run, "chain-1.jsonl"))
    stored = read_chain(str(out / "chain-1.jsonl"))
    assert stored.config.storage == "summary"
    assert stored.log_post == full.log_post
    assert stored.group_means.n_samples == len(full.samples)
    assert os.path.getsize(out / "chain-1.jsonl") < os.path.getsize(os.path.join(fitted_run, "chain-1.jsonl"))

    result = summarize([str(out / "chain-1.jsonl")], out=str(tmp_path / "tables"))
    assert os.path.isfile(tmp_path / "tables" / "groups.csv")
    assert result is not None
