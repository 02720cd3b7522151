"""
Fan-out of independent chains over worker processes.
"""

import asyncio
import os
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

import numpy as np

from hdp_lpcm.commands.utils.defaults import WORKERS_ENV
from hdp_lpcm.exceptions import InvalidArgumentsError
from hdp_lpcm.logger import logger
from hdp_lpcm.network import DynamicNetwork
from hdp_lpcm.sampling import Chain, SamplerConfig, run_chain


def chain_seeds(seed: int, n_chains: int) -> List[int]:
    """
    Seeds of `n_chains` chains. The first chain uses `seed` itself, the others get seeds spawned from it.
    """
    spawned = np.random.SeedSequence(seed).spawn(max(n_chains - 1, 0))
    return [seed] + [int(child.generate_state(1, dtype=np.uint64)[0]) for child in spawned]


def worker_count(n_chains: int) -> int:
    """
    Number of worker processes: the `HDP_LPCM_WORKERS` override if set, the CPU count otherwise, never
    more than the number of chains.

    Raises:
        InvalidArgumentsError: If the override is not a positive integer.
    """
    override = os.environ.get(WORKERS_ENV)

    if override is not None:
        try:
            workers = int(override)
        except ValueError as exc:
            raise InvalidArgumentsError(f"{WORKERS_ENV} must be a positive integer, got '{override}'") from exc
        if workers < 1:
            raise InvalidArgumentsError(f"{WORKERS_ENV} must be a positive integer, got '{override}'")
    else:
        workers = os.cpu_count() or 1

    return max(1, min(n_chains, workers))


async def run_chains(
    net: DynamicNetwork, configs: List[SamplerConfig], checkpoint_paths: List[Optional[str]], resume: bool = False
) -> List[Chain]:
    """
    Runs one chain per configuration. Several chains run concurrently in a process pool, a single chain
    runs in the calling process. Results keep the order of `configs`.
    """
    if len(configs) == 1:
        return [run_chain(net, configs[0], checkpoint_paths[0], resume)]

    workers = worker_count(len(configs))
    logger.info("Running %d chains on %d workers", len(configs), workers)

    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=workers) as executor:
        tasks = [
            loop.run_in_executor(executor, run_chain, net, config, path, resume)
            for config, path in zip(configs, checkpoint_paths)
        ]
        return list(await asyncio.gather(*tasks))
