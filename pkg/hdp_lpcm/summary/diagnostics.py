"""
Convergence diagnostics of scalar traces.
"""

from typing import Optional, Tuple

import numpy as np
from scipy import stats

from hdp_lpcm.exceptions import ParameterError, UndefinedStatisticError
from hdp_lpcm.logger import logger

MIN_SERIES_LENGTH = 4
KDE_GRID_SIZE = 200


def autocorrelation(series: np.ndarray, max_lag: Optional[int] = None) -> np.ndarray:
    """
    Sample autocorrelations for lags `0..max_lag`, normalized by the lag-0 autocovariance (biased
    estimator). Computed with a zero-padded FFT.
    """
    x = np.asarray(series, dtype=np.float64)
    n = x.size
    max_lag = n - 1 if max_lag is None else min(max_lag, n - 1)

    centered = x - x.mean()
    size = 1 << (2 * n - 1).bit_length()
    spectrum = np.fft.rfft(centered, size)
    acov = np.fft.irfft(spectrum * np.conj(spectrum), size)[:n] / n

    return acov[: max_lag + 1] / acov[0]


def ess_and_acf(series: np.ndarray, max_lag: Optional[int] = None) -> Tuple[float, np.ndarray]:
    """
    Effective sample size `N / (1 + 2 sum_k rho_k)` with the sum truncated by Geyer's initial positive
    sequence: autocorrelations are added in pairs `rho_{2m} + rho_{2m+1}` while the pair sums stay
    positive.

    Args:
        series (np.ndarray): Trace of a scalar.
        max_lag (int, optional): Number of autocorrelations returned. Defaults to all lags.

    Raises:
        ParameterError: If the series is shorter than 4.
        UndefinedStatisticError: If the series is constant.

    Returns:
        Tuple[float, np.ndarray]: The effective sample size and the autocorrelations up to `max_lag`.
    """
    x = np.asarray(series, dtype=np.float64)
    n = x.size

    if n < MIN_SERIES_LENGTH:
        raise ParameterError("series length", n, f"at least {MIN_SERIES_LENGTH}")
    if np.ptp(x) == 0:
        raise UndefinedStatisticError("ESS", "the series is constant")

    acf = autocorrelation(x)
    tau = -1.0
    for m in range(n // 2):
        pair = acf[2 * m] + (acf[2 * m + 1] if 2 * m + 1 < n else 0.0)
        if pair <= 0:
            break
        tau += 2.0 * pair

    ess = n / max(tau, 1.0 / n)
    logger.debug("ESS %.1f of %d draws", ess, n)

    max_lag = n - 1 if max_lag is None else min(max_lag, n - 1)
    return float(ess), acf[: max_lag + 1]


def posterior_kde(series: np.ndarray, grid_size: int = KDE_GRID_SIZE) -> Tuple[np.ndarray, np.ndarray]:
    """
    Gaussian kernel density estimate of a scalar trace on an even grid that extends three bandwidths past
    the sample range.

    Raises:
        UndefinedStatisticError: If the trace is constant or too short.
    """
    x = np.asarray(series, dtype=np.float64)
    if x.size < 2 or np.ptp(x) == 0:
        raise UndefinedStatisticError("KDE", "the trace is constant or has fewer than two values")

    kde = stats.gaussian_kde(x)
    bandwidth = float(np.sqrt(kde.covariance[0, 0]))
    grid = np.linspace(x.min() - 3.0 * bandwidth, x.max() + 3.0 * bandwidth, grid_size)
    return grid, kde(grid)
