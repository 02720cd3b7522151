"""
Partition distances, link prediction scores and posterior predictive edge probabilities.
"""

from typing import Sequence

import numpy as np
from scipy.special import expit
from sklearn.metrics import adjusted_rand_score, mutual_info_score, roc_auc_score

from hdp_lpcm.exceptions import DimensionError, EmptyChainError, LengthMismatchError, UndefinedStatisticError
from hdp_lpcm.model import distance_tensor
from hdp_lpcm.network import DynamicNetwork
from hdp_lpcm.sampling import Chain


def _check_lengths(z: Sequence, zhat: Sequence) -> None:
    if len(z) != len(zhat):
        raise LengthMismatchError(len(z), len(zhat))


def vi_distance(z: Sequence, zhat: Sequence) -> float:
    """
    Variation of information `H(z) + H(zhat) - 2 I(z, zhat)` between two partitions of the same actors,
    in nats.

    Raises:
        LengthMismatchError: If the label vectors differ in length.
    """
    _check_lengths(z, zhat)
    if len(z) == 0:
        return 0.0

    value = mutual_info_score(z, z) + mutual_info_score(zhat, zhat) - 2.0 * mutual_info_score(z, zhat)
    return max(float(value), 0.0)


def adjusted_rand_index(z: Sequence, zhat: Sequence) -> float:
    """
    Adjusted Rand index under the permutation model.

    Raises:
        LengthMismatchError: If the label vectors differ in length.
    """
    _check_lengths(z, zhat)
    return float(adjusted_rand_score(z, zhat))


def _check_sequences(Z: np.ndarray, Zhat: np.ndarray) -> None:  # pylint: disable=invalid-name
    if Z.ndim != 2 or Z.shape != Zhat.shape:
        raise DimensionError(f"label sequences of shapes {Z.shape} and {Zhat.shape}")


def time_averaged_vi(Z: np.ndarray, Zhat: np.ndarray) -> float:  # pylint: disable=invalid-name
    """
    Mean over time of the variation of information between two `(T, n)` label sequences.
    """
    Z, Zhat = np.asarray(Z), np.asarray(Zhat)  # pylint: disable=invalid-name
    _check_sequences(Z, Zhat)
    return float(np.mean([vi_distance(z, zhat) for z, zhat in zip(Z, Zhat)]))


def time_averaged_ari(Z: np.ndarray, Zhat: np.ndarray) -> float:  # pylint: disable=invalid-name
    """
    Mean over time of the adjusted Rand index between two `(T, n)` label sequences.
    """
    Z, Zhat = np.asarray(Z), np.asarray(Zhat)  # pylint: disable=invalid-name
    _check_sequences(Z, Zhat)
    return float(np.mean([adjusted_rand_index(z, zhat) for z, zhat in zip(Z, Zhat)]))


def posterior_edge_probabilities(chain: Chain) -> np.ndarray:
    """
    Posterior mean edge probability of every dyad at every time, shape `(T, n, n)` with a zero diagonal.

    Raises:
        EmptyChainError: If the chain holds no samples.
    """
    if len(chain.samples) == 0:
        raise EmptyChainError()

    total = np.zeros(chain.samples[0].positions.X.shape[:2] + (chain.samples[0].n,))
    for sample in chain.samples:
        total += expit(sample.groups.beta0 - distance_tensor(sample.positions.X))

    probabilities = total / len(chain.samples)
    n_actors = probabilities.shape[1]
    probabilities[:, np.arange(n_actors), np.arange(n_actors)] = 0.0
    return probabilities


def in_sample_auc(net: DynamicNetwork, chain: Chain) -> float:
    """
    Area under the ROC curve of the posterior mean edge probabilities against the observed edges, over
    all dyads and times. Tied scores count one half.

    Raises:
        UndefinedStatisticError: If the network has only edges or only non-edges.
    """
    labels = net.dyad_values().ravel()
    if labels.size == 0 or labels.min() == labels.max():
        raise UndefinedStatisticError("AUC", "the network has a single class of dyads")

    rows, cols = net.dyads()
    scores = posterior_edge_probabilities(chain)[:, rows, cols].ravel()
    return float(roc_auc_score(labels, scores))


def forecast_edge_probabilities(chain: Chain) -> np.ndarray:
    """
    One-step-ahead edge probabilities for the time after the last observed one, shape `(n, n)`.

    For every kept sample, labels move on with the last transition matrix (the initial distribution if
    there is a single time step), each label `k` gives the expected position
    `lambda * mu_k + (1 - lambda) * X_T`, and the edge probabilities are averaged over the labels of both
    actors and over the samples.
    """
    if len(chain.samples) == 0:
        raise EmptyChainError()

    n_actors = chain.samples[0].n
    total = np.zeros((n_actors, n_actors))

    for sample in chain.samples:
        X_last = sample.positions.X[-1]  # pylint: disable=invalid-name
        if sample.T > 1:
            next_labels = sample.trans.Pi[-1][sample.labels.Z[-1]]
        else:
            next_labels = np.broadcast_to(sample.trans.pi0, (n_actors, sample.L))

        lam, mu = sample.groups.lambda_, sample.groups.mu
        expected = lam * mu[None, :, :] + (1.0 - lam) * X_last[:, None, :]
        diff = expected[:, None, :, None, :] - expected[None, :, None, :, :]
        probs = expit(sample.groups.beta0 - np.sqrt(np.sum(diff**2, axis=-1)))

        total += np.einsum("ik,jl,ijkl->ij", next_labels, next_labels, probs)

    forecast = total / len(chain.samples)
    forecast[np.arange(n_actors), np.arange(n_actors)] = 0.0
    return forecast
