"""
Conjugate updates of the group centers, the group variances and the blending coefficient.
"""

from typing import Tuple

import numpy as np

from hdp_lpcm.model import ModelState
from hdp_lpcm.sampling.counts import TransitionCounts
from hdp_lpcm.sampling.random import sample_inv_gamma, sample_truncated_normal


def _autoregressive_residuals(state: ModelState) -> np.ndarray:
    """
    `X_t - (1 - lambda) X_{t-1}` for `t >= 1`, shape `(T - 1, n, p)`.
    """
    X = state.positions.X  # pylint: disable=invalid-name
    return X[1:] - (1.0 - state.groups.lambda_) * X[:-1]


def group_mean_conditional(state: ModelState, counts: TransitionCounts) -> Tuple[np.ndarray, np.ndarray]:
    """
    Mean (`L x p`) and variance (`L`) of the normal conditional of every group center.
    """
    X, Z = state.positions.X, state.labels.Z  # pylint: disable=invalid-name
    groups, hyper = state.groups, state.hyper
    lam, sigma2 = groups.lambda_, groups.sigma2
    n_groups, p = state.L, state.p

    n_later = counts.n_group[1:].sum(axis=0)
    var = 1.0 / ((counts.n_group[0] + lam**2 * n_later) / sigma2 + 1.0 / hyper.tau2)

    sum_first = np.zeros((n_groups, p))
    np.add.at(sum_first, Z[0], X[0])
    sum_later = np.zeros((n_groups, p))
    if state.T > 1:
        np.add.at(sum_later, Z[1:].ravel(), _autoregressive_residuals(state).reshape(-1, p))

    mean = var[:, None] * (
        sum_first / sigma2[:, None] + lam * sum_later / sigma2[:, None] + hyper.prior_mean(p)[None, :] / hyper.tau2
    )
    return mean, var


def sample_group_means(state: ModelState, counts: TransitionCounts, rng: np.random.Generator) -> np.ndarray:
    """
    Draws every group center from its normal conditional. Empty groups are drawn from the prior.

    Returns:
        np.ndarray: New centers of shape `(L, p)`.
    """
    mean, var = group_mean_conditional(state, counts)
    return mean + np.sqrt(var)[:, None] * rng.standard_normal(mean.shape)


def group_variance_conditional(state: ModelState, counts: TransitionCounts) -> Tuple[np.ndarray, np.ndarray]:
    """
    Shape and scale (both of length `L`) of the inverse-gamma conditional of every group variance.
    """
    X, Z = state.positions.X, state.labels.Z  # pylint: disable=invalid-name
    groups, hyper = state.groups, state.hyper
    mu = groups.mu

    sq = np.zeros(state.L)
    np.add.at(sq, Z[0], np.sum((X[0] - mu[Z[0]]) ** 2, axis=-1))
    if state.T > 1:
        resid = _autoregressive_residuals(state) - groups.lambda_ * mu[Z[1:]]
        np.add.at(sq, Z[1:].ravel(), np.sum(resid**2, axis=-1).ravel())

    n_members = counts.n_group.sum(axis=0)
    return (n_members * state.p + hyper.a) / 2.0, (hyper.b + sq) / 2.0


def sample_group_variances(state: ModelState, counts: TransitionCounts, rng: np.random.Generator) -> np.ndarray:
    """
    Draws every group variance from its inverse-gamma conditional. Empty groups are drawn from the prior.

    Returns:
        np.ndarray: New variances of shape `(L,)`.
    """
    shape, scale = group_variance_conditional(state, counts)
    return sample_inv_gamma(shape, scale, rng)


def lambda_conditional(state: ModelState) -> Tuple[float, float]:
    """
    Location and variance of the untruncated normal whose restriction to `(0, 1)` is the conditional of
    the blending coefficient.
    """
    hyper = state.hyper

    if state.T == 1:
        return hyper.mu_lambda, hyper.sigma2_lambda

    X, Z = state.positions.X, state.labels.Z  # pylint: disable=invalid-name
    prev = X[:-1]
    toward_center = state.groups.mu[Z[1:]] - prev
    sigma2 = state.groups.sigma2[Z[1:]]

    quadratic = float(np.sum(np.sum(toward_center**2, axis=-1) / sigma2))
    linear = float(np.sum(np.sum((X[1:] - prev) * toward_center, axis=-1) / sigma2))

    var = 1.0 / (1.0 / hyper.sigma2_lambda + quadratic)
    mean = (hyper.mu_lambda + hyper.sigma2_lambda * linear) / (1.0 + hyper.sigma2_lambda * quadratic)
    return mean, var


def sample_lambda(state: ModelState, rng: np.random.Generator) -> float:
    """
    Draws the blending coefficient from its truncated normal conditional on `(0, 1)`.
    """
    mean, var = lambda_conditional(state)
    return sample_truncated_normal(mean, var, rng)
