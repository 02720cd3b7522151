"""
Plot-ready tables of a summarized chain. Actors, times and groups are 1-based in every table.
"""

import os
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from hdp_lpcm.logger import logger
from hdp_lpcm.model import LabelSequences, LatentPositions, ModelState
from hdp_lpcm.network import DynamicNetwork

SMALL_GROUP_SIZE = 5


def _coordinate_columns(p: int, prefix: str = "x") -> List[str]:
    return [f"{prefix}{d + 1}" for d in range(p)]


def coassignment_table(coassign: np.ndarray) -> pd.DataFrame:
    """
    Long table `t, i, j, probability` over the dyads `i < j`.
    """
    n_times, n_actors, _ = coassign.shape
    rows, cols = np.triu_indices(n_actors, k=1)
    return pd.DataFrame(
        {
            "t": np.repeat(np.arange(1, n_times + 1), rows.size),
            "i": np.tile(rows + 1, n_times),
            "j": np.tile(cols + 1, n_times),
            "probability": coassign[:, rows, cols].ravel(),
        }
    )


def label_table(labels: LabelSequences, actor_names: Optional[List[str]] = None) -> pd.DataFrame:
    Z = labels.Z  # pylint: disable=invalid-name
    n_times, n_actors = Z.shape
    table = pd.DataFrame(
        {
            "t": np.repeat(np.arange(1, n_times + 1), n_actors),
            "actor": np.tile(np.arange(1, n_actors + 1), n_times),
            "label": Z.ravel() + 1,
        }
    )
    if actor_names is not None:
        table.insert(2, "name", np.tile(np.asarray(actor_names, dtype=object), n_times))
    return table


def position_table(positions: LatentPositions, labels: Optional[LabelSequences] = None) -> pd.DataFrame:
    n_times, n_actors, p = positions.X.shape
    table = pd.DataFrame(positions.stacked(), columns=_coordinate_columns(p))
    table.insert(0, "t", np.repeat(np.arange(1, n_times + 1), n_actors))
    table.insert(1, "actor", np.tile(np.arange(1, n_actors + 1), n_times))
    if labels is not None:
        table["label"] = labels.Z.ravel() + 1
    return table


def group_table(state: ModelState, labels: LabelSequences) -> pd.DataFrame:
    """
    Occupied groups per time with their center, standard deviation, the radius `2 sigma` of the plotted
    ellipse, the occupancy and a flag for groups of fewer than five actors.
    """
    records: List[Dict[str, object]] = []
    sigma = np.sqrt(state.groups.sigma2)

    for t, row in enumerate(labels.Z):
        groups, sizes = np.unique(row, return_counts=True)
        for g, size in zip(groups, sizes):
            record: Dict[str, object] = {"t": t + 1, "group": int(g) + 1, "size": int(size)}
            record.update(dict(zip(_coordinate_columns(state.p, "mu"), state.groups.mu[g].tolist())))
            record.update({"sigma": float(sigma[g]), "radius": 2.0 * float(sigma[g]), "small": bool(size < SMALL_GROUP_SIZE)})
            records.append(record)

    return pd.DataFrame.from_records(records)


def alluvial_table(labels: LabelSequences) -> pd.DataFrame:
    """
    Group-to-group transition tallies between consecutive times.
    """
    records = []
    Z = labels.Z  # pylint: disable=invalid-name

    for t in range(1, Z.shape[0]):
        pairs, counts = np.unique(np.stack([Z[t - 1], Z[t]], axis=1), axis=0, return_counts=True)
        for (source, target), count in zip(pairs, counts):
            records.append({"t_from": t, "t_to": t + 1, "from": int(source) + 1, "to": int(target) + 1, "count": int(count)})

    return pd.DataFrame.from_records(records, columns=["t_from", "t_to", "from", "to", "count"])


def group_count_table(posterior: np.ndarray, selected: Optional[LabelSequences] = None) -> pd.DataFrame:
    """
    Posterior of the number of occupied groups per time in wide form (`k0..kL`), with the posterior mode
    and, if given, the number of groups of the selected partition.
    """
    table = pd.DataFrame(posterior, columns=[f"k{k}" for k in range(posterior.shape[1])])
    table.insert(0, "t", np.arange(1, posterior.shape[0] + 1))
    table["mode"] = np.argmax(posterior, axis=1)
    if selected is not None:
        table["selected"] = selected.n_occupied()
    return table


def edge_table(net: DynamicNetwork, positions: LatentPositions) -> pd.DataFrame:
    """
    Observed edges per time with the coordinates of both endpoints.
    """
    p = positions.p
    t_idx, i_idx, j_idx = np.nonzero(np.triu(net.adjacency, 1))
    table = pd.DataFrame({"t": t_idx + 1, "i": i_idx + 1, "j": j_idx + 1})

    for d, column in enumerate(_coordinate_columns(p)):
        table[f"{column}_i"] = positions.X[t_idx, i_idx, d]
        table[f"{column}_j"] = positions.X[t_idx, j_idx, d]
    return table


def edge_probability_table(probabilities: np.ndarray) -> pd.DataFrame:
    """
    Long table `t, i, j, probability` of a `(T, n, n)` array over the dyads `i < j`.
    """
    return coassignment_table(probabilities)


def write_table(table: pd.DataFrame, path: str) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)

    logger.debug("Writing %d rows to %s", len(table), path)
    table.to_csv(path, index=False)


def read_table(path: str) -> pd.DataFrame:
    return pd.read_csv(path)
