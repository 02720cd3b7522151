"""
Preprocessing of dynamic networks: window aggregation and degree filtering.
"""

from math import ceil
from typing import Tuple

import numpy as np

from hdp_lpcm.exceptions import EmptyNetworkError, ParameterError
from hdp_lpcm.logger import logger
from hdp_lpcm.network.dynamic_network import DynamicNetwork


def window_aggregate(net: DynamicNetwork, window: int) -> DynamicNetwork:
    """
    Collapses consecutive blocks of `window` time steps into one slice. A dyad is connected in the
    aggregated slice if it is connected at any time inside the block. The last block may be shorter.

    Args:
        net (DynamicNetwork): Network to aggregate.
        window (int): Number of time steps per block.

    Raises:
        ParameterError: If `window < 1`.

    Returns:
        DynamicNetwork: Network with `ceil(T / window)` slices.
    """
    if window < 1:
        raise ParameterError("window", window, "a positive integer")

    n_windows = ceil(net.T / window)
    adjacency = np.stack([net.adjacency[k * window : (k + 1) * window].max(axis=0) for k in range(n_windows)])

    time_labels = None
    if net.time_labels is not None:
        time_labels = []
        for k in range(n_windows):
            block = net.time_labels[k * window : (k + 1) * window]
            time_labels.append(block[0] if len(block) == 1 else f"{block[0]}-{block[-1]}")

    logger.debug("Aggregated %d time steps into %d windows of size %d", net.T, n_windows, window)
    return DynamicNetwork(adjacency=adjacency, actor_names=net.actor_names, time_labels=time_labels)


def filter_min_degree(net: DynamicNetwork, dmin: int) -> Tuple[DynamicNetwork, np.ndarray]:
    """
    Keeps the actors whose degree in the original network reaches `dmin` in at least one time slice. The
    filter is a single pass over the original degrees, the retained actors are not re-checked.

    Args:
        net (DynamicNetwork): Network to filter.
        dmin (int): Minimum degree.

    Raises:
        ParameterError: If `dmin < 0`.
        EmptyNetworkError: If no actor is retained.

    Returns:
        Tuple[DynamicNetwork, np.ndarray]: The restricted network and the original (0-based) index of
            every retained actor.
    """
    if dmin < 0:
        raise ParameterError("dmin", dmin, "a nonnegative integer")

    keep = np.flatnonzero((net.degrees() >= dmin).any(axis=0))

    if keep.size == 0:
        raise EmptyNetworkError()

    adjacency = net.adjacency[:, keep][:, :, keep]
    names = [net.actor_names[i] for i in keep] if net.actor_names is not None else None

    logger.info("Degree filter kept %d of %d actors (dmin=%d)", keep.size, net.n, dmin)
    return DynamicNetwork(adjacency=adjacency, actor_names=names, time_labels=net.time_labels), keep
