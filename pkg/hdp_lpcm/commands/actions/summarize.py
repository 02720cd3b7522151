"""
Summarizes chains into plot-ready tables.
"""

import os
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from hdp_lpcm.commands.utils.defaults import (
    ACTORS_FILENAME,
    ALLUVIAL_FILENAME,
    COASSIGNMENT_FILENAME,
    EDGE_PROBABILITIES_FILENAME,
    EDGES_FILENAME,
    FORECAST_FILENAME,
    GROUP_COUNTS_FILENAME,
    GROUPS_FILENAME,
    MEAN_POSITIONS_FILENAME,
    NETWORK_FILENAME,
    POSITIONS_FILENAME,
    SELECTED_LABELS_FILENAME,
    SUMMARY_FILENAME,
)
from hdp_lpcm.commands.utils.models import SummarizeConfig
from hdp_lpcm.commands.utils.run import get_run_config, load_chains, run_directory, write_json, write_manifest
from hdp_lpcm.logger import logger
from hdp_lpcm.network import DynamicNetwork, read_edge_list
from hdp_lpcm.sampling import Chain
from hdp_lpcm.summary import (
    alluvial_table,
    coassignment_table,
    edge_probability_table,
    edge_table,
    forecast_edge_probabilities,
    group_count_table,
    group_table,
    label_table,
    mean_aligned_positions,
    posterior_edge_probabilities,
    position_table,
    read_table,
    summarize_partition,
    write_table,
)


def sibling_network(chain_path: str, network_path: Optional[str], chain: Chain) -> Optional[DynamicNetwork]:
    """
    The network given explicitly or, failing that, the preprocessed network written by `fit` next to the
    chain file. Sizes are taken from the chain so isolated trailing actors are kept.
    """
    path = network_path or os.path.join(os.path.dirname(os.path.abspath(chain_path)), NETWORK_FILENAME)
    if not os.path.isfile(path):
        logger.info("No network found at %s, skipping edge tables", path)
        return None
    return read_edge_list(path, n=chain.n, T=chain.T)


def _actor_names(chain_path: str) -> Optional[List[str]]:
    path = os.path.join(os.path.dirname(os.path.abspath(chain_path)), ACTORS_FILENAME)
    if not os.path.isfile(path):
        return None

    table = read_table(path)
    return table["name"].astype(str).tolist() if "name" in table.columns else None


def _forecast_table(forecast: np.ndarray) -> pd.DataFrame:
    rows, cols = np.triu_indices(forecast.shape[0], k=1)
    return pd.DataFrame({"i": rows + 1, "j": cols + 1, "probability": forecast[rows, cols]})


def summarize(
    chains: List[str],
    config_path: Optional[str] = None,
    network: Optional[str] = None,
    out: Optional[str] = None,
) -> Dict[str, Any]:
    """
    Selects a representative partition and writes the summary tables: selected labels, co-assignment
    probabilities, the posterior of the number of groups, positions of the selected sample and the
    Procrustes-aligned posterior mean positions, group ellipses, alluvial flows, posterior and forecast
    edge probabilities and, if the network is available, the edge table for latent space plots.

    Args:
        chains (List[str]): Chain files, samples of several files are pooled.
        config_path (str, optional): Path to a JSON config file. Defaults to None.
        network (str, optional): Edge list of the fitted network. Defaults to `network.csv` next to the
            first chain.
        out (str, optional): Output directory.

    Returns:
        Dict[str, Any]: The content of `summary.json`.
    """
    config = get_run_config(SummarizeConfig, config_path, {"chains": chains, "network": network, "out": out})
    chain = load_chains(config.chains)
    net = sibling_network(config.chains[0], config.network, chain)

    logger.info("Summarizing %d samples", len(chain.samples))
    summary = summarize_partition(chain, net)
    selected_state = chain.samples[summary.selected_sample_index]
    mean_positions = mean_aligned_positions(chain, summary.aligned_positions)

    with run_directory(config.out) as directory:
        tables = {
            SELECTED_LABELS_FILENAME: label_table(summary.selected, _actor_names(config.chains[0])),
            COASSIGNMENT_FILENAME: coassignment_table(summary.coassign),
            GROUP_COUNTS_FILENAME: group_count_table(summary.group_count_posterior, summary.selected),
            POSITIONS_FILENAME: position_table(summary.aligned_positions, summary.selected),
            MEAN_POSITIONS_FILENAME: position_table(mean_positions, summary.selected),
            GROUPS_FILENAME: group_table(selected_state, summary.selected),
            ALLUVIAL_FILENAME: alluvial_table(summary.selected),
            EDGE_PROBABILITIES_FILENAME: edge_probability_table(posterior_edge_probabilities(chain)),
            FORECAST_FILENAME: _forecast_table(forecast_edge_probabilities(chain)),
        }
        if net is not None:
            tables[EDGES_FILENAME] = edge_table(net, summary.aligned_positions)

        for filename, table in tables.items():
            write_table(table, os.path.join(directory, filename))

        result = {
            "samples": len(chain.samples),
            "selected_sample_index": summary.selected_sample_index,
            "objective": float(summary.objective[summary.selected_sample_index]),
            "groups_per_time": summary.selected.n_occupied().tolist(),
            "posterior_mean_beta0": float(np.mean(chain.trace("beta0"))),
            "posterior_mean_lambda": float(np.mean(chain.trace("lambda"))),
            "selected_sigma": np.sqrt(selected_state.groups.sigma2).tolist(),
        }
        write_json(os.path.join(directory, SUMMARY_FILENAME), result)
        write_manifest(
            directory, "summarize", config, chain.rng_provenance.seed, list(tables) + [SUMMARY_FILENAME]
        )

    return result
