"""
Fits the model to an edge list with one or more independent chains.
"""

import math
import os
import time
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from hdp_lpcm.commands.utils.defaults import (
    ACTORS_FILENAME,
    CHAIN_FILENAME,
    CHECKPOINT_FILENAME,
    NETWORK_FILENAME,
    REPORT_FILENAME,
)
from hdp_lpcm.commands.utils.models import FitConfig, PreprocessingConfig
from hdp_lpcm.commands.utils.parallel import chain_seeds, run_chains
from hdp_lpcm.commands.utils.run import get_run_config, run_directory, write_json, write_manifest
from hdp_lpcm.logger import logger
from hdp_lpcm.network import DynamicNetwork, filter_min_degree, read_edge_list, window_aggregate, write_edge_list
from hdp_lpcm.pydantic_utils import get_model_dump
from hdp_lpcm.sampling import Chain, write_chain
from hdp_lpcm.summary import write_table


def _finite_or_none(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


def load_network(path: str, preprocessing: PreprocessingConfig) -> Tuple[DynamicNetwork, np.ndarray]:
    """
    Reads the edge list, aggregates time windows and applies the degree filter, in this order.

    Returns:
        Tuple[DynamicNetwork, np.ndarray]: The network and the original (0-based) index of every actor.
    """
    net = read_edge_list(path, n=preprocessing.n, T=preprocessing.T)
    actors = np.arange(net.n)

    if preprocessing.window is not None:
        net = window_aggregate(net, preprocessing.window)
    if preprocessing.min_degree is not None:
        net, actors = filter_min_degree(net, preprocessing.min_degree)

    logger.info("Fitting a network with n=%d actors and T=%d time steps", net.n, net.T)
    return net, actors


def _actor_table(net: DynamicNetwork, actors: np.ndarray) -> pd.DataFrame:
    table = pd.DataFrame({"actor": np.arange(1, net.n + 1), "original": actors + 1})
    if net.actor_names is not None:
        table["name"] = net.actor_names
    return table


def _chain_report(chain: Chain) -> Dict[str, Any]:
    final_hyper = get_model_dump(chain.samples[-1].hyper, mode="json") if chain.samples else None
    return {
        "seed": chain.rng_provenance.seed,
        "samples": len(chain.samples),
        "interrupted": chain.interrupted,
        "step_sizes": chain.step_sizes,
        "acceptance": {
            phase: {block: _finite_or_none(rate) for block, rate in rates.items()}
            for phase, rates in chain.acceptance_rates().items()
        },
        "final_hyperparams": final_hyper,
    }


def _checkpoint_paths(out: str, n_chains: int, enabled: bool) -> List[Optional[str]]:
    if not enabled:
        return [None] * n_chains

    directory = f"{os.path.abspath(out)}.checkpoints"
    os.makedirs(directory, exist_ok=True)
    return [os.path.join(directory, CHECKPOINT_FILENAME.format(index=k + 1)) for k in range(n_chains)]


async def fit(
    input_path: Optional[str] = None,
    config_path: Optional[str] = None,
    seed: Optional[int] = None,
    out: Optional[str] = None,
    chains: Optional[int] = None,
    n_tune: Optional[int] = None,
    n_burn: Optional[int] = None,
    n_keep: Optional[int] = None,
    thin: Optional[int] = None,
    L: Optional[int] = None,  # pylint: disable=invalid-name
    p: Optional[int] = None,
    n: Optional[int] = None,
    T: Optional[int] = None,  # pylint: disable=invalid-name
    window: Optional[int] = None,
    min_degree: Optional[int] = None,
    chain_format: Optional[str] = None,
    checkpoint_every: Optional[int] = None,
    storage: Optional[str] = None,
    resume: Optional[bool] = None,
    progress: Optional[bool] = None,
) -> List[Chain]:
    """
    Runs the sampler and writes one chain file per chain, a run report, the preprocessed network and the
    actor index.

    Checkpoints are written to the sibling directory `<out>.checkpoints` so they survive a failed run.
    With `resume`, every chain continues from its checkpoint if one exists.

    Args:
        input_path (str, optional): Edge list to fit. Required unless given in the config file.
        config_path (str, optional): Path to a JSON config file. Defaults to None.
        seed (int, optional): Run seed. Chain 0 uses it as is, the other chains get spawned seeds.
        out (str, optional): Output directory, must not exist or be empty.
        chains (int, optional): Number of independent chains. Defaults to 1.

    Other arguments override the matching fields of the sampler and preprocessing configuration.

    Returns:
        List[Chain]: The chains, in the order of their files.
    """
    config = get_run_config(
        FitConfig,
        config_path,
        {
            "input": input_path,
            "out": out,
            "chains": chains,
            "chain_format": chain_format,
            "resume": resume,
            "sampler.seed": seed,
            "sampler.n_tune": n_tune,
            "sampler.n_burn": n_burn,
            "sampler.n_keep": n_keep,
            "sampler.thin": thin,
            "sampler.L": L,
            "sampler.p": p,
            "sampler.checkpoint_every": checkpoint_every,
            "sampler.storage": storage,
            "sampler.progress": progress,
            "preprocessing.n": n,
            "preprocessing.T": T,
            "preprocessing.window": window,
            "preprocessing.min_degree": min_degree,
        },
    )
    net, actors = load_network(config.input, config.preprocessing)

    seeds = chain_seeds(config.sampler.seed, config.chains)
    configs = [config.sampler.model_copy(update={"seed": chain_seed}) for chain_seed in seeds]
    checkpoints = _checkpoint_paths(
        config.out, config.chains, config.resume or config.sampler.checkpoint_every is not None
    )

    with run_directory(config.out) as directory:
        started = time.perf_counter()
        results = await run_chains(net, configs, checkpoints, config.resume)
        runtime = time.perf_counter() - started
        logger.info("Sampling finished in %.1f s", runtime)

        outputs = [NETWORK_FILENAME, ACTORS_FILENAME, REPORT_FILENAME]
        write_edge_list(net, os.path.join(directory, NETWORK_FILENAME))
        write_table(_actor_table(net, actors), os.path.join(directory, ACTORS_FILENAME))

        for k, chain in enumerate(results):
            filename = CHAIN_FILENAME.format(index=k + 1, suffix=config.chain_format)
            write_chain(chain, os.path.join(directory, filename))
            outputs.append(filename)

        write_json(
            os.path.join(directory, REPORT_FILENAME),
            {
                "n": net.n,
                "T": net.T,
                "runtime_seconds": round(runtime, 3),
                "chains": [_chain_report(chain) for chain in results],
            },
        )
        write_manifest(directory, "fit", config, config.sampler.seed, outputs)

    return results
