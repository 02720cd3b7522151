# pylint: disable=unused-argument, unused-import, redefined-outer-name, protected-access, missing-module-docstring, missing-class-docstring
# pyright: reportGeneralTypeIssues=false

import os

import pytest

from hdp_lpcm.commands.utils.models import FitConfig, SummarizeConfig
from hdp_lpcm.commands.utils.parallel import chain_seeds, run_chains, worker_count
from hdp_lpcm.commands.utils.run import get_run_config, load_chains, load_config_file, run_directory
from hdp_lpcm.exceptions import ChainFormatError, InvalidArgumentsError, MissingFileError
from hdp_lpcm.sampling import SamplerConfig, write_chain
from tests.fixtures.runs import write_config
from tests.fixtures.states import network_for, random_state, three_sample_chain


def test_chain_seeds():
    seeds = chain_seeds(5, 3)

    assert seeds[0] == 5
    assert len(set(seeds)) == 3
    assert seeds == chain_seeds(5, 3)
    assert chain_seeds(5, 1) == [5]
    assert chain_seeds(6, 2)[1] != seeds[1]


def test_worker_count(monkeypatch):
    monkeypatch.delenv("HDP_LPCM_WORKERS", raising=False)
    assert 1 <= worker_count(4) <= 4
    assert worker_count(1) == 1

    monkeypatch.setenv("HDP_LPCM_WORKERS", "3")
    assert worker_count(8) == 3
    assert worker_count(2) == 2

    for value in ("0", "many"):
        monkeypatch.setenv("HDP_LPCM_WORKERS", value)
        with pytest.raises(InvalidArgumentsError):
            worker_count(2)


@pytest.mark.asyncio
async def test_single_chain_runs_in_process():
    net = network_for(random_state(n=5, T=2, p=2, L=2, seed=1), seed=2)
    config = SamplerConfig(n_tune=2, n_burn=0, n_keep=3, L=2, n_init_sweeps=3, seed=4)

    chains = await run_chains(net, [config], [None])

    assert len(chains) == 1
    assert len(chains[0].samples) == 3
    assert chains[0].rng_provenance.seed == 4


def test_run_directory_moves_results(tmp_path):
    out = tmp_path / "out"
    with run_directory(str(out)) as directory:
        assert not os.path.exists(out)
        with open(os.path.join(directory, "a.txt"), "w", encoding="utf-8") as f:
            f.write("a")

    assert os.listdir(out) == ["a.txt"]
    assert sorted(os.listdir(tmp_path)) == ["out"]


def test_run_directory_accepts_an_empty_directory(tmp_path):
    (tmp_path / "out").mkdir()
    with run_directory(str(tmp_path / "out")) as directory:
        open(os.path.join(directory, "b.txt"), "w", encoding="utf-8").close()

    assert os.listdir(tmp_path / "out") == ["b.txt"]


def test_failed_run_leaves_nothing_behind(tmp_path):
    with pytest.raises(RuntimeError):
        with run_directory(str(tmp_path / "out")):
            raise RuntimeError("sampler failed")

    assert os.listdir(tmp_path) == []


def test_run_directory_refuses_existing_results(tmp_path):
    (tmp_path / "out").mkdir()
    (tmp_path / "out" / "chain-1.jsonl").write_text("{}")

    with pytest.raises(InvalidArgumentsError):
        with run_directory(str(tmp_path / "out")):
            pass


def test_flags_win_over_the_config_file(tmp_path):
    edges = tmp_path / "edges.csv"
    edges.write_text("1,1,2\n", encoding="utf-8")
    config = write_config(str(tmp_path / "fit.json"), {"input": str(edges), "sampler": {"n_keep": 7, "L": 4}})

    parsed = get_run_config(FitConfig, config, {"sampler.n_keep": 9, "sampler.L": None, "chains": 2})

    assert parsed.sampler.n_keep == 9
    assert parsed.sampler.L == 4
    assert parsed.chains == 2
    assert parsed.chain_format == "jsonl"


def test_config_files(tmp_path):
    assert load_config_file(None) == {}

    with pytest.raises(MissingFileError):
        load_config_file(str(tmp_path / "missing.json"))

    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    with pytest.raises(ChainFormatError):
        load_config_file(str(broken))

    listed = tmp_path / "list.json"
    listed.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(ChainFormatError):
        load_config_file(str(listed))


def test_pooled_chains(tmp_path, three_sample_chain):
    first, second = str(tmp_path / "a.jsonl"), str(tmp_path / "b.bin")
    write_chain(three_sample_chain, first)
    write_chain(three_sample_chain.model_copy(update={"interrupted": True}), second)

    pooled = load_chains([first, second])

    assert len(pooled.samples) == 6
    assert len(pooled.log_post) == 6
    assert pooled.interrupted
    assert pooled.group_means is None
    assert len(load_chains([first]).samples) == 3
