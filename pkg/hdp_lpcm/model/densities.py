"""
Emission and trajectory densities of the autoregressive hidden Markov model, plus the prior densities
used by the log posterior.
"""

from typing import Optional

import numpy as np
from scipy import stats
from scipy.special import gammaln, xlogy

from hdp_lpcm.exceptions import DimensionError, LabelError
from hdp_lpcm.model.state import GroupParams, TransitionStructure

LOG_2PI = float(np.log(2.0 * np.pi))


def isotropic_normal_logpdf(x: np.ndarray, mean: np.ndarray, var) -> np.ndarray:
    """
    `log N(x | mean, var * I)` over the last axis, broadcasting `var` over the leading axes.
    """
    p = x.shape[-1]
    sq = np.sum((x - mean) ** 2, axis=-1)
    return -0.5 * p * (LOG_2PI + np.log(var)) - 0.5 * sq / var


def emission_log_density(x_t: np.ndarray, x_prev: Optional[np.ndarray], g: int, groups: GroupParams) -> float:
    """
    Log-density of a position given the actor's group `g` (0-based) and, after the first time step, its
    previous position.
    """
    if not 0 <= g < groups.L:
        raise LabelError(g, groups.L)

    x_t = np.asarray(x_t, dtype=np.float64)
    if x_prev is None:
        mean = groups.mu[g]
    else:
        mean = groups.lambda_ * groups.mu[g] + (1.0 - groups.lambda_) * np.asarray(x_prev, dtype=np.float64)

    return float(isotropic_normal_logpdf(x_t, mean, groups.sigma2[g]))


def emission_log_densities(X: np.ndarray, groups: GroupParams) -> np.ndarray:  # pylint: disable=invalid-name
    """
    Emission log-densities for every time, actor and group.

    Args:
        X (np.ndarray): Positions of shape `(T, n, p)`.
        groups (GroupParams): Group parameters.

    Returns:
        np.ndarray: Array of shape `(T, n, L)`.
    """
    lam = groups.lambda_
    means = np.empty((X.shape[0], X.shape[1], groups.L, X.shape[2]))
    means[0] = groups.mu[None, :, :]
    means[1:] = lam * groups.mu[None, None, :, :] + (1.0 - lam) * X[:-1, :, None, :]

    return isotropic_normal_logpdf(X[:, :, None, :], means, groups.sigma2[None, None, :])


def log_transition_terms(Z: np.ndarray, trans: TransitionStructure) -> np.ndarray:  # pylint: disable=invalid-name
    """
    `log pi0[Z_0]` and `log Pi[t-1][Z_{t-1}, Z_t]` for every actor, shape `(T, n)`. Zero probabilities give
    `-inf`.
    """
    with np.errstate(divide="ignore"):
        log_pi0 = np.log(trans.pi0)
        log_Pi = np.log(trans.Pi)  # pylint: disable=invalid-name

    terms = np.empty(Z.shape)
    terms[0] = log_pi0[Z[0]]
    for t in range(1, Z.shape[0]):
        terms[t] = log_Pi[t - 1, Z[t - 1], Z[t]]
    return terms


def label_log_densities(X: np.ndarray, Z: np.ndarray, trans: TransitionStructure, groups: GroupParams) -> np.ndarray:  # pylint: disable=invalid-name
    """
    Complete-data log-density of every actor's trajectory, shape `(n,)`.
    """
    emissions = emission_log_densities(X, groups)
    realized = np.take_along_axis(emissions, Z[:, :, None], axis=2)[:, :, 0]
    return np.sum(log_transition_terms(Z, trans) + realized, axis=0)


def trajectory_log_density(
    X_i: np.ndarray, Z_i: np.ndarray, trans: TransitionStructure, groups: GroupParams  # pylint: disable=invalid-name
) -> float:
    """
    Log-density of one actor's positions and labels: initial and transition probabilities of the labels
    plus the emission term of every time step.

    Args:
        X_i (np.ndarray): Positions of shape `(T, p)`.
        Z_i (np.ndarray): Labels of shape `(T,)`.
        trans (TransitionStructure): Transition structure.
        groups (GroupParams): Group parameters.

    Raises:
        DimensionError: If the shapes do not agree.
        LabelError: If a label is outside of `0..L-1`.

    Returns:
        float: The log-density, possibly `-inf`.
    """
    X_i = np.asarray(X_i, dtype=np.float64)  # pylint: disable=invalid-name
    Z_i = np.asarray(Z_i, dtype=np.int64)  # pylint: disable=invalid-name

    if X_i.ndim != 2 or Z_i.shape != (X_i.shape[0],) or trans.Pi.shape[0] != X_i.shape[0] - 1:
        raise DimensionError(f"trajectory of shape {X_i.shape} with labels of shape {Z_i.shape}")
    if Z_i.size > 0 and (Z_i.min() < 0 or Z_i.max() >= groups.L):
        raise LabelError(Z_i.max() if Z_i.max() >= groups.L else Z_i.min(), groups.L)

    return float(label_log_densities(X_i[:, None, :], Z_i[:, None], trans, groups)[0])


def dirichlet_logpdf(x: np.ndarray, alpha: np.ndarray) -> np.ndarray:
    """
    Dirichlet log-density over the last axis. Zero entries are allowed where `alpha == 1`.
    """
    return gammaln(np.sum(alpha, axis=-1)) - np.sum(gammaln(alpha), axis=-1) + np.sum(xlogy(alpha - 1.0, x), axis=-1)


def inv_gamma_logpdf(x, shape: float, scale: float) -> float:
    return float(np.sum(stats.invgamma.logpdf(x, shape, scale=scale)))


def gamma_logpdf(x: float, shape: float, rate: float) -> float:
    return float(stats.gamma.logpdf(x, shape, scale=1.0 / rate))


def truncated_normal_logpdf(x: float, mean: float, var: float, lower: float = 0.0, upper: float = 1.0) -> float:
    sd = np.sqrt(var)
    return float(stats.truncnorm.logpdf(x, (lower - mean) / sd, (upper - mean) / sd, loc=mean, scale=sd))
