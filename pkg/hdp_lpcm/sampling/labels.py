"""
Blocked forward-backward sampling of the label sequences.

Backward messages are kept in normalized form. With 0-based times `t = 0..T-1`, row `t + 1` of the
message array weights the label drawn at time `t`, the last row is identically one, and row 0 holds the
marginal likelihood of the whole trajectory (the same value for every `k`).
"""

import itertools
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.special import logsumexp

from hdp_lpcm.exceptions import DegenerateDistributionError, DimensionError, EnumerationTooLarge
from hdp_lpcm.model import GroupParams, TransitionStructure, emission_log_densities, label_log_densities
from hdp_lpcm.pydantic_utils import FloatArray, IntArray

MAX_ENUMERATION = 10**6


class BackwardMessages(BaseModel):
    """
    Normalized backward messages `m` of shape `(T + 1, L)` and the cumulative log normalizers, such that
    the unnormalized messages are `m * exp(log_norm)[:, None]`.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    m: FloatArray
    log_norm: FloatArray

    def unnormalized(self) -> np.ndarray:
        return self.m * np.exp(self.log_norm)[:, None]

    def log_evidence(self) -> float:
        """
        Log marginal likelihood of the trajectory given the parameters.
        """
        return float(np.log(self.m[0, 0]) + self.log_norm[0])


class LabelPosteriorTable(BaseModel):
    """
    Exact posterior over all `L**T` label sequences of one actor.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    sequences: IntArray
    probabilities: FloatArray

    def probability_of(self, sequence) -> float:
        matches = np.all(self.sequences == np.asarray(sequence)[None, :], axis=1)
        return float(self.probabilities[matches].sum())


def _backward_messages(emissions: np.ndarray, trans: TransitionStructure) -> Tuple[np.ndarray, np.ndarray]:
    """
    Batched backward recursion for emissions of shape `(T, n, L)`.
    """
    n_times, n_actors, n_groups = emissions.shape
    m = np.empty((n_times + 1, n_actors, n_groups))
    log_norm = np.zeros((n_times + 1, n_actors))
    m[n_times] = 1.0

    for t in range(n_times - 1, -1, -1):
        with np.errstate(divide="ignore"):
            a = emissions[t] + np.log(m[t + 1])
        shift = a.max(axis=1, keepdims=True)
        finite = np.isfinite(shift[:, 0])
        v = np.zeros_like(a)
        v[finite] = np.exp(a[finite] - shift[finite])

        if t >= 1:
            row = v @ trans.Pi[t - 1].T
        else:
            row = np.repeat((v @ trans.pi0)[:, None], n_groups, axis=1)

        total = row.sum(axis=1)
        ok = finite & (total > 0)

        m[t] = 1.0 / n_groups
        m[t, ok] = row[ok] / total[ok, None]
        log_norm[t] = -np.inf
        log_norm[t, ok] = log_norm[t + 1, ok] + shift[ok, 0] + np.log(total[ok])

    return m, log_norm


def _categorical(log_weights: np.ndarray, rng: np.random.Generator, context: str) -> np.ndarray:
    """
    One draw per row of `log_weights` (shape `(n, L)`), normalizing each row first.
    """
    shift = log_weights.max(axis=1, keepdims=True)

    if not np.all(np.isfinite(shift)):
        raise DegenerateDistributionError(context)

    cdf = np.cumsum(np.exp(log_weights - shift), axis=1)
    u = rng.random(log_weights.shape[0]) * cdf[:, -1]
    return np.minimum(np.sum(cdf <= u[:, None], axis=1), log_weights.shape[1] - 1)


def _forward_sample(
    emissions: np.ndarray, m: np.ndarray, trans: TransitionStructure, rng: np.random.Generator
) -> np.ndarray:
    n_times, n_actors, _ = emissions.shape
    Z = np.empty((n_times, n_actors), dtype=np.int64)  # pylint: disable=invalid-name

    with np.errstate(divide="ignore"):
        log_pi0 = np.log(trans.pi0)
        log_Pi = np.log(trans.Pi)  # pylint: disable=invalid-name
        log_m = np.log(m)

    for t in range(n_times):
        prior = log_pi0[None, :] if t == 0 else log_Pi[t - 1][Z[t - 1]]
        Z[t] = _categorical(prior + emissions[t] + log_m[t + 1], rng, f"label draw at time {t}")

    return Z


def _check_trajectory(X_i: np.ndarray, trans: TransitionStructure, groups: GroupParams) -> None:  # pylint: disable=invalid-name
    if X_i.ndim != 2 or X_i.shape[1] != groups.mu.shape[1] or trans.Pi.shape[0] != X_i.shape[0] - 1:
        raise DimensionError(f"trajectory of shape {X_i.shape} for T - 1 = {trans.Pi.shape[0]}, p = {groups.mu.shape[1]}")
    if trans.L != groups.L:
        raise DimensionError(f"transition structure with L={trans.L} and groups with L={groups.L}")


def backward_pass(X_i: np.ndarray, trans: TransitionStructure, groups: GroupParams) -> BackwardMessages:  # pylint: disable=invalid-name
    """
    Computes the backward messages of one actor's trajectory.

    Args:
        X_i (np.ndarray): Positions of shape `(T, p)`.
        trans (TransitionStructure): Transition structure.
        groups (GroupParams): Group parameters.

    Returns:
        BackwardMessages: Messages of shape `(T + 1, L)` with their log normalizers.
    """
    X_i = np.asarray(X_i, dtype=np.float64)  # pylint: disable=invalid-name
    _check_trajectory(X_i, trans, groups)

    m, log_norm = _backward_messages(emission_log_densities(X_i[:, None, :], groups), trans)
    return BackwardMessages(m=m[:, 0, :], log_norm=log_norm[:, 0])


def sample_labels(
    X_i: np.ndarray,  # pylint: disable=invalid-name
    messages: BackwardMessages,
    trans: TransitionStructure,
    groups: GroupParams,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    Draws one actor's label sequence from its exact conditional given the positions and parameters.

    Raises:
        DegenerateDistributionError: If all weights vanish at some time.

    Returns:
        np.ndarray: Labels of shape `(T,)`.
    """
    X_i = np.asarray(X_i, dtype=np.float64)  # pylint: disable=invalid-name
    _check_trajectory(X_i, trans, groups)

    emissions = emission_log_densities(X_i[:, None, :], groups)
    return _forward_sample(emissions, messages.m[:, None, :], trans, rng)[:, 0]


def sample_label_sequences(
    X: np.ndarray, trans: TransitionStructure, groups: GroupParams, rng: np.random.Generator  # pylint: disable=invalid-name
) -> np.ndarray:
    """
    Resamples the label sequences of all actors at once, shape `(T, n)`. Actors are conditionally
    independent, the draws are consumed in actor order at every time.
    """
    emissions = emission_log_densities(X, groups)
    m, _ = _backward_messages(emissions, trans)
    return _forward_sample(emissions, m, trans, rng)


def brute_force_label_posterior(
    X_i: np.ndarray, trans: TransitionStructure, groups: GroupParams  # pylint: disable=invalid-name
) -> LabelPosteriorTable:
    """
    Exact label posterior of one actor by enumerating all `L**T` sequences.

    Raises:
        EnumerationTooLarge: If `L**T` exceeds one million.
    """
    X_i = np.asarray(X_i, dtype=np.float64)  # pylint: disable=invalid-name
    _check_trajectory(X_i, trans, groups)

    n_times, n_groups = X_i.shape[0], groups.L
    size = n_groups**n_times
    if size > MAX_ENUMERATION:
        raise EnumerationTooLarge(size, MAX_ENUMERATION)

    sequences = np.array(list(itertools.product(range(n_groups), repeat=n_times)), dtype=np.int64)
    X_rep = np.repeat(X_i[:, None, :], size, axis=1)  # pylint: disable=invalid-name
    log_joint = label_log_densities(X_rep, sequences.T, trans, groups)

    return LabelPosteriorTable(sequences=sequences, probabilities=np.exp(log_joint - logsumexp(log_joint)))
