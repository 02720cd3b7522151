# pylint: disable=unused-argument, unused-import, redefined-outer-name, protected-access, missing-module-docstring, missing-class-docstring
# pyright: reportGeneralTypeIssues=false

import os

import numpy as np
import pytest

from hdp_lpcm.commands import diagnose
from hdp_lpcm.exceptions import ParameterError
from hdp_lpcm.sampling import write_chain
from hdp_lpcm.summary import read_table
from tests.fixtures.runs import fit_config, fitted_run, simulated_run, simulation_config
from tests.fixtures.states import chain_of, random_state, three_sample_chain


def test_diagnostic_tables(tmp_path, fitted_run):
    out = tmp_path / "diagnostics"
    ess = diagnose([os.path.join(fitted_run, "chain-1.jsonl")], max_lag=2, out=str(out))

    assert sorted(os.listdir(out)) == ["acf.csv", "ess.csv", "kde.csv", "manifest.json", "traces.csv"]
    assert ess["quantity"].tolist() == ["log_post", "beta0", "lambda"]
    assert (ess["samples"] == 6).all()

    traces = read_table(str(out / "traces.csv"))
    assert list(traces.columns) == ["chain", "sample", "log_post", "beta0", "lambda"]
    assert len(traces) == 6

    acf = read_table(str(out / "acf.csv"))
    assert acf["lag"].tolist() == [0, 1, 2]
    assert acf.loc[0, "lambda"] == pytest.approx(1.0)


def test_chains_are_diagnosed_separately(tmp_path, fitted_run):
    path = os.path.join(fitted_run, "chain-1.jsonl")
    ess = diagnose([path, path], out=str(tmp_path / "out"))

    assert ess["chain"].tolist() == [1, 1, 1, 2, 2, 2]
    assert ess.loc[ess["chain"] == 1, "ess"].tolist() == pytest.approx(
        ess.loc[ess["chain"] == 2, "ess"].tolist(), nan_ok=True
    )


def test_constant_trace_has_no_ess(tmp_path):
    chain = str(tmp_path / "chain.jsonl")
    # the chain fixture records a log posterior of zero for every sample
    write_chain(chain_of([random_state(n=3, T=2, p=2, L=2, seed=k) for k in range(5)]), chain)

    ess = diagnose([chain], out=str(tmp_path / "out"))

    assert np.isnan(ess.loc[ess["quantity"] == "log_post", "ess"].item())
    assert np.isfinite(ess.loc[ess["quantity"] == "beta0", "ess"].item())
    kde = read_table(str(tmp_path / "out" / "kde.csv"))
    assert set(kde["quantity"]) == {"beta0", "lambda"}


def test_too_few_samples(tmp_path, three_sample_chain):
    chain = str(tmp_path / "chain.jsonl")
    write_chain(three_sample_chain, chain)

    with pytest.raises(ParameterError):
        diagnose([chain], out=str(tmp_path / "out"))
