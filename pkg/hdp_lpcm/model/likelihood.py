"""
Euclidean distance likelihood of the observed networks.
"""

from typing import Union

import numpy as np
from scipy.special import expit

from hdp_lpcm.exceptions import DimensionError
from hdp_lpcm.model.state import LatentPositions
from hdp_lpcm.network import DynamicNetwork

ETA_BRANCH = 35.0

ArrayLike = Union[float, np.ndarray]


def edge_logit(x_i: np.ndarray, x_j: np.ndarray, beta0: float) -> float:
    """
    Linear predictor `beta0 - ||x_i - x_j||`.
    """
    x_i = np.asarray(x_i, dtype=np.float64)
    x_j = np.asarray(x_j, dtype=np.float64)

    if x_i.shape != x_j.shape:
        raise DimensionError(f"positions of shape {x_i.shape} and {x_j.shape}")

    return float(beta0 - np.linalg.norm(x_i - x_j))


def edge_probability(eta: ArrayLike) -> ArrayLike:
    """
    Logistic function, saturating to exactly 0 or 1 instead of overflowing.
    """
    result = expit(eta)
    return float(result) if np.ndim(result) == 0 else result


def log1p_exp(eta: ArrayLike) -> np.ndarray:
    """
    `log(1 + exp(eta))` with the large-argument branches at `|eta| > 35`.
    """
    eta = np.asarray(eta, dtype=np.float64)
    out = np.empty_like(eta)

    high = eta > ETA_BRANCH
    low = eta < -ETA_BRANCH
    mid = ~(high | low)

    out[high] = eta[high]
    out[low] = np.exp(eta[low])
    out[mid] = np.log1p(np.exp(eta[mid]))
    return out


def dyad_log_likelihood(y: np.ndarray, eta: np.ndarray) -> np.ndarray:
    return y * eta - log1p_exp(eta)


def distance_tensor(X: np.ndarray) -> np.ndarray:  # pylint: disable=invalid-name
    """
    Pairwise Euclidean distances `d[t, i, j]` for positions of shape `(T, n, p)`.
    """
    diff = X[:, :, None, :] - X[:, None, :, :]
    return np.sqrt(np.einsum("tijk,tijk->tij", diff, diff))


def _check_shapes(net: DynamicNetwork, X: np.ndarray) -> None:  # pylint: disable=invalid-name
    if X.ndim != 3 or X.shape[:2] != (net.T, net.n):
        raise DimensionError(f"positions of shape {X.shape} for a network with T={net.T}, n={net.n}")


def network_log_likelihood(net: DynamicNetwork, positions: LatentPositions, beta0: float) -> float:
    """
    Log-likelihood of all `T` adjacency matrices over the dyads `j < i`.

    Args:
        net (DynamicNetwork): Observed networks.
        positions (LatentPositions): Latent positions of shape `(T, n, p)`.
        beta0 (float): Intercept.

    Raises:
        DimensionError: If the positions do not match the network.

    Returns:
        float: The log-likelihood.
    """
    _check_shapes(net, positions.X)
    return float(np.sum(time_log_likelihoods(net, distance_tensor(positions.X), beta0)))


def time_log_likelihoods(net: DynamicNetwork, distances: np.ndarray, beta0: float) -> np.ndarray:
    """
    Log-likelihood contribution of every time step given precomputed distances.
    """
    rows, cols = net.dyads()
    eta = beta0 - distances[:, rows, cols]
    return dyad_log_likelihood(net.dyad_values(), eta).sum(axis=1)


def position_log_likelihood_delta(
    net: DynamicNetwork, X: np.ndarray, t: int, i: int, x_new: np.ndarray, beta0: float  # pylint: disable=invalid-name
) -> float:
    """
    Change of the network log-likelihood when actor `i` moves to `x_new` at time `t`. Only the `n - 1`
    dyads that involve `i` at time `t` are evaluated.
    """
    others = np.arange(net.n) != i
    y = net.adjacency[t, i, others]
    eta_old = beta0 - np.linalg.norm(X[t, others] - X[t, i], axis=1)
    eta_new = beta0 - np.linalg.norm(X[t, others] - x_new, axis=1)

    return float(np.sum(y * (eta_new - eta_old) - log1p_exp(eta_new) + log1p_exp(eta_old)))
