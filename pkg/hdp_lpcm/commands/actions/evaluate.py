"""
Scores chains against a simulated ground truth.
"""

import os
from typing import Dict, List, Optional

import pandas as pd

from hdp_lpcm.commands.utils.defaults import METRICS_FILENAME, PER_TIME_FILENAME
from hdp_lpcm.commands.utils.models import EvaluateConfig
from hdp_lpcm.commands.utils.run import get_run_config, load_chains, run_directory, write_manifest
from hdp_lpcm.logger import logger
from hdp_lpcm.network import read_edge_list
from hdp_lpcm.simulation import read_truth_labels
from hdp_lpcm.summary import (
    adjusted_rand_index,
    in_sample_auc,
    select_partition,
    time_averaged_ari,
    time_averaged_vi,
    vi_distance,
    write_table,
)


def evaluate(
    chains: List[str],
    network: Optional[str] = None,
    truth: Optional[str] = None,
    config_path: Optional[str] = None,
    out: Optional[str] = None,
) -> Dict[str, float]:
    """
    Computes the in-sample AUC of the posterior mean edge probabilities and the time-averaged VI and ARI
    of the selected partition against the true labels. Per-time scores and group counts go to a second
    table.

    Args:
        chains (List[str]): Chain files, samples of several files are pooled.
        network (str): Edge list the chains were fitted to.
        truth (str): True labels as a `t, actor, label` table.
        config_path (str, optional): Path to a JSON config file. Defaults to None.
        out (str, optional): Output directory.

    Raises:
        DimensionError: If the true labels do not match the chains.
        UndefinedStatisticError: If the network has only edges or only non-edges.

    Returns:
        Dict[str, float]: The metrics.
    """
    config = get_run_config(
        EvaluateConfig, config_path, {"chains": chains, "network": network, "truth": truth, "out": out}
    )
    chain = load_chains(config.chains)
    net = read_edge_list(config.network, n=chain.n, T=chain.T)
    true_labels = read_truth_labels(config.truth).Z
    selected, _, _ = select_partition(chain, net)

    metrics = {
        "auc": in_sample_auc(net, chain),
        "vi": time_averaged_vi(true_labels, selected.Z),
        "ari": time_averaged_ari(true_labels, selected.Z),
    }
    logger.info("AUC %.3f, VI %.4f, ARI %.3f", metrics["auc"], metrics["vi"], metrics["ari"])

    per_time = pd.DataFrame.from_records(
        [
            {
                "t": t + 1,
                "vi": vi_distance(z, zhat),
                "ari": adjusted_rand_index(z, zhat),
                "groups_true": len(set(z.tolist())),
                "groups_selected": len(set(zhat.tolist())),
            }
            for t, (z, zhat) in enumerate(zip(true_labels, selected.Z))
        ]
    )

    with run_directory(config.out) as directory:
        write_table(
            pd.DataFrame({"metric": list(metrics), "value": list(metrics.values())}),
            os.path.join(directory, METRICS_FILENAME),
        )
        write_table(per_time, os.path.join(directory, PER_TIME_FILENAME))
        write_manifest(directory, "evaluate", config, chain.rng_provenance.seed, [METRICS_FILENAME, PER_TIME_FILENAME])

    return metrics
