"""
Random-walk Metropolis-Hastings updates of the latent positions and the intercept, and the step size
adaptation used while tuning.
"""

from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from hdp_lpcm.model import ModelState, distance_tensor, position_log_likelihood_delta
from hdp_lpcm.model.densities import isotropic_normal_logpdf
from hdp_lpcm.model.likelihood import time_log_likelihoods
from hdp_lpcm.network import DynamicNetwork

TUNE_GROW = 1.1
TUNE_SHRINK = 0.9


def _position_prior_delta(state: ModelState, t: int, i: int, x_new: np.ndarray) -> float:
    """
    Change of the emission terms that involve `X[t, i]`: its own emission and, unless `t` is the last
    time, the emission of `X[t + 1, i]`.
    """
    X, Z = state.positions.X, state.labels.Z  # pylint: disable=invalid-name
    mu, sigma2, lam = state.groups.mu, state.groups.sigma2, state.groups.lambda_
    x_old = X[t, i]

    g = Z[t, i]
    mean = mu[g] if t == 0 else lam * mu[g] + (1.0 - lam) * X[t - 1, i]
    delta = isotropic_normal_logpdf(x_new, mean, sigma2[g]) - isotropic_normal_logpdf(x_old, mean, sigma2[g])

    if t < state.T - 1:
        h = Z[t + 1, i]
        mean_new = lam * mu[h] + (1.0 - lam) * x_new
        mean_old = lam * mu[h] + (1.0 - lam) * x_old
        delta += isotropic_normal_logpdf(X[t + 1, i], mean_new, sigma2[h]) - isotropic_normal_logpdf(
            X[t + 1, i], mean_old, sigma2[h]
        )

    return float(delta)


def mh_update_positions(
    state: ModelState,
    net: DynamicNetwork,
    step_x: float,
    rng: np.random.Generator,
    likelihood_weight: float = 1.0,
) -> Tuple[ModelState, np.ndarray]:
    """
    One Metropolis-Hastings pass over every `(time, actor)` position, times in the outer loop. Each
    position gets a normal random-walk proposal with scale `step_x` and is accepted on the change of its
    local conditional: the `n - 1` dyads at that time plus the adjacent emission terms.

    The positions of `state` are updated in place.

    Args:
        state (ModelState): Current state.
        net (DynamicNetwork): Observed networks.
        step_x (float): Proposal standard deviation.
        rng (np.random.Generator): Random generator.
        likelihood_weight (float): Multiplier of the likelihood term, 0 samples from the prior.

    Returns:
        Tuple[ModelState, np.ndarray]: The state and a `(T, n)` boolean acceptance indicator.
    """
    X = state.positions.X  # pylint: disable=invalid-name
    n_times, n_actors, p = X.shape
    beta0 = state.groups.beta0

    noise = rng.standard_normal((n_times, n_actors, p))
    with np.errstate(divide="ignore"):
        log_u = np.log(rng.random((n_times, n_actors)))
    accepted = np.zeros((n_times, n_actors), dtype=bool)

    for t in range(n_times):
        for i in range(n_actors):
            x_new = X[t, i] + step_x * noise[t, i]
            delta = _position_prior_delta(state, t, i, x_new)
            if likelihood_weight != 0.0:
                delta += likelihood_weight * position_log_likelihood_delta(net, X, t, i, x_new, beta0)

            if log_u[t, i] < delta:
                X[t, i] = x_new
                accepted[t, i] = True

    return state, accepted


def mh_update_intercept(
    state: ModelState,
    net: DynamicNetwork,
    step_beta0: float,
    rng: np.random.Generator,
    likelihood_weight: float = 1.0,
    distances: Optional[np.ndarray] = None,
) -> Tuple[ModelState, bool]:
    """
    Random-walk Metropolis-Hastings update of the intercept against the network likelihood and its
    normal prior. The intercept of `state` is updated in place.

    Args:
        distances (np.ndarray, optional): Precomputed `(T, n, n)` distances of the current positions.

    Returns:
        Tuple[ModelState, bool]: The state and whether the proposal was accepted.
    """
    hyper = state.hyper
    beta0 = state.groups.beta0
    proposal = beta0 + step_beta0 * rng.standard_normal()
    with np.errstate(divide="ignore"):
        log_u = np.log(rng.random())

    prior_sd = np.sqrt(hyper.sigma2_beta0)
    delta = float(stats.norm.logpdf(proposal, hyper.mu_beta0, prior_sd) - stats.norm.logpdf(beta0, hyper.mu_beta0, prior_sd))

    if likelihood_weight != 0.0:
        if distances is None:
            distances = distance_tensor(state.positions.X)
        delta += likelihood_weight * float(
            np.sum(time_log_likelihoods(net, distances, proposal)) - np.sum(time_log_likelihoods(net, distances, beta0))
        )

    if log_u < delta:
        state.groups.beta0 = float(proposal)
        return state, True

    return state, False


def tune_step_sizes(
    accept_history: Mapping[str, Sequence[float]],
    current_steps: Mapping[str, float],
    low: float = 0.25,
    high: float = 0.40,
) -> Dict[str, float]:
    """
    Adapts the proposal scale of every block from its acceptance rate over the last window: grows it by
    10% above `high`, shrinks it by 10% below `low`, keeps it otherwise.

    Args:
        accept_history (Mapping[str, Sequence[float]]): Acceptance indicators (or rates) per block.
        current_steps (Mapping[str, float]): Current step per block.

    Returns:
        Dict[str, float]: New step per block.
    """
    steps = dict(current_steps)

    for block, history in accept_history.items():
        if len(history) == 0:
            continue

        rate = float(np.mean(history))
        if rate > high:
            steps[block] = current_steps[block] * TUNE_GROW
        elif rate < low:
            steps[block] = current_steps[block] * TUNE_SHRINK

    return steps
