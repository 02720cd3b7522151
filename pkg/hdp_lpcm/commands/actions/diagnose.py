"""
Convergence diagnostics of the scalar traces of one or more chains.
"""

import os
from typing import List, Optional

import numpy as np
import pandas as pd

from hdp_lpcm.commands.utils.defaults import (
    ACF_FILENAME,
    DIAGNOSED_QUANTITIES,
    ESS_FILENAME,
    KDE_FILENAME,
    TRACES_FILENAME,
)
from hdp_lpcm.commands.utils.models import DiagnoseConfig
from hdp_lpcm.commands.utils.run import get_run_config, run_directory, write_manifest
from hdp_lpcm.exceptions import UndefinedStatisticError
from hdp_lpcm.logger import logger
from hdp_lpcm.sampling import Chain, read_chain
from hdp_lpcm.summary import ess_and_acf, posterior_kde, write_table

KDE_QUANTITIES = ["beta0", "lambda"]


def _trace_table(chain: Chain, index: int) -> pd.DataFrame:
    table = pd.DataFrame({name: chain.trace(name) for name in DIAGNOSED_QUANTITIES})
    table.insert(0, "chain", index)
    table.insert(1, "sample", np.arange(1, len(chain.samples) + 1))
    return table


def diagnose(
    chains: List[str],
    config_path: Optional[str] = None,
    max_lag: Optional[int] = None,
    out: Optional[str] = None,
) -> pd.DataFrame:
    """
    Writes the traces of the log posterior, `beta0` and `lambda`, their autocorrelations up to `max_lag`,
    effective sample sizes and kernel density estimates of `beta0` and `lambda`, per chain file.

    A constant trace has no effective sample size: a warning is logged and the ESS is reported as `nan`.

    Args:
        chains (List[str]): Chain files.
        config_path (str, optional): Path to a JSON config file. Defaults to None.
        max_lag (int, optional): Largest autocorrelation lag written. Defaults to 100.
        out (str, optional): Output directory.

    Raises:
        ParameterError: If a chain holds fewer than four samples.

    Returns:
        pd.DataFrame: The ESS table.
    """
    config = get_run_config(DiagnoseConfig, config_path, {"chains": chains, "max_lag": max_lag, "out": out})

    traces, acfs, ess_rows, kdes = [], [], [], []
    seed = None

    for index, path in enumerate(config.chains, start=1):
        chain = read_chain(path)
        seed = chain.rng_provenance.seed if seed is None else seed
        traces.append(_trace_table(chain, index))

        acf_table = pd.DataFrame({"chain": index, "lag": np.arange(min(config.max_lag, len(chain.samples) - 1) + 1)})
        for name in DIAGNOSED_QUANTITIES:
            series = chain.trace(name)
            try:
                ess, acf = ess_and_acf(series, config.max_lag)
            except UndefinedStatisticError as exc:
                logger.warning("Chain %d, %s: %s", index, name, exc)
                ess, acf = float("nan"), np.full(len(acf_table), np.nan)

            acf_table[name] = acf
            ess_rows.append({"chain": index, "quantity": name, "samples": series.size, "ess": ess})

            if name in KDE_QUANTITIES and np.isfinite(ess):
                grid, density = posterior_kde(series)
                kdes.append(pd.DataFrame({"chain": index, "quantity": name, "x": grid, "density": density}))

        acfs.append(acf_table)

    ess_table = pd.DataFrame.from_records(ess_rows)
    tables = {
        TRACES_FILENAME: pd.concat(traces, ignore_index=True),
        ACF_FILENAME: pd.concat(acfs, ignore_index=True),
        ESS_FILENAME: ess_table,
        KDE_FILENAME: (
            pd.concat(kdes, ignore_index=True) if kdes else pd.DataFrame(columns=["chain", "quantity", "x", "density"])
        ),
    }

    with run_directory(config.out) as directory:
        for filename, table in tables.items():
            write_table(table, os.path.join(directory, filename))
        write_manifest(directory, "diagnose", config, seed, list(tables))

    return ess_table
