"""
Initial state of a chain.

Positions start from classical multidimensional scaling of the shortest-path distances of every slice,
aligned across time with Procrustes rotations, and are refined by a short Metropolis-Hastings run of
the model without clustering. The best state of that run seeds the positions and the intercept. Group
parameters come from k-means on the actor trajectories, the transition structure is drawn from its
prior.
"""

from typing import Tuple

import numpy as np
from scipy.sparse.csgraph import shortest_path
from scipy.special import logit
from sklearn.cluster import KMeans

from hdp_lpcm.logger import logger
from hdp_lpcm.model import (
    GroupParams,
    Hyperparams,
    LabelSequences,
    LatentPositions,
    ModelState,
    TransitionStructure,
    align_configuration,
    distance_tensor,
    emission_log_densities,
)
from hdp_lpcm.model.likelihood import time_log_likelihoods
from hdp_lpcm.network import DynamicNetwork
from hdp_lpcm.sampling.config import SamplerConfig
from hdp_lpcm.sampling.hyperparams import default_hyperparams
from hdp_lpcm.sampling.metropolis import mh_update_intercept, mh_update_positions, tune_step_sizes
from hdp_lpcm.sampling.random import sample_dirichlet, sample_inv_gamma

NO_CLUSTER_LAMBDA = 1e-3
MIN_GROUP_VARIANCE = 1e-2
DENSITY_CLIP = 1e-3


def shortest_path_dissimilarities(adjacency: np.ndarray) -> np.ndarray:
    """
    Hop distances of one slice. Unreachable pairs get the largest finite distance plus one, a slice
    without edges gets distance 1 between all actors.
    """
    dist = shortest_path(adjacency.astype(np.float64), method="D", directed=False, unweighted=True)
    finite = np.isfinite(dist)
    largest = dist[finite].max() if np.any(finite) else 0.0
    dist[~finite] = max(largest, 0.0) + 1.0
    return dist


def classical_mds(dissimilarities: np.ndarray, p: int) -> np.ndarray:
    """
    Classical (Torgerson) scaling of a dissimilarity matrix into `p` dimensions.
    """
    n = dissimilarities.shape[0]
    centering = np.eye(n) - np.full((n, n), 1.0 / n)
    gram = -0.5 * centering @ (dissimilarities**2) @ centering

    eigvals, eigvecs = np.linalg.eigh(gram)
    order = np.argsort(eigvals)[::-1][: min(p, n)]
    coords = eigvecs[:, order] * np.sqrt(np.maximum(eigvals[order], 0.0))

    if coords.shape[1] < p:
        coords = np.hstack([coords, np.zeros((n, p - coords.shape[1]))])
    return coords


def initial_positions(net: DynamicNetwork, p: int) -> np.ndarray:
    """
    Per-slice classical scaling of hop distances, each slice rotated onto the previous one.
    """
    X = np.stack([classical_mds(shortest_path_dissimilarities(net.adjacency[t]), p) for t in range(net.T)])  # pylint: disable=invalid-name

    for t in range(1, net.T):
        X[t], _ = align_configuration(X[t], X[t - 1])

    return X


def _no_cluster_state(X: np.ndarray, beta0: float, hyper: Hyperparams) -> ModelState:  # pylint: disable=invalid-name
    n_times, n_actors, p = X.shape
    return ModelState(
        positions=LatentPositions(X=X),
        labels=LabelSequences(Z=np.zeros((n_times, n_actors), dtype=np.int64)),
        trans=TransitionStructure(beta=np.ones(1), pi0=np.ones(1), Pi=np.ones((n_times - 1, 1, 1))),
        groups=GroupParams(mu=np.zeros((1, p)), sigma2=np.array([hyper.tau2]), lambda_=NO_CLUSTER_LAMBDA, beta0=beta0),
        hyper=hyper,
    )


def _no_cluster_log_posterior(state: ModelState, net: DynamicNetwork) -> float:
    X = state.positions.X  # pylint: disable=invalid-name
    hyper = state.hyper
    loglik = float(np.sum(time_log_likelihoods(net, distance_tensor(X), state.groups.beta0)))
    emissions = float(np.sum(emission_log_densities(X, state.groups)))
    prior = -0.5 * (state.groups.beta0 - hyper.mu_beta0) ** 2 / hyper.sigma2_beta0
    return loglik + emissions + prior


def refine_positions(
    net: DynamicNetwork, X: np.ndarray, beta0: float, hyper: Hyperparams, config: SamplerConfig, rng: np.random.Generator  # pylint: disable=invalid-name
) -> Tuple[np.ndarray, float]:
    """
    Short Metropolis-Hastings run of positions and intercept under the model without clustering (a
    single wide group and a near random-walk prior). Returns the best visited positions and intercept.
    """
    state = _no_cluster_state(X.copy(), beta0, hyper)
    best = _no_cluster_log_posterior(state, net)
    best_X, best_beta0 = state.positions.X.copy(), beta0  # pylint: disable=invalid-name
    steps = {"positions": config.step_x, "intercept": config.step_beta0}
    history = {"positions": [], "intercept": []}

    for sweep in range(config.n_init_sweeps):
        state, accepted = mh_update_positions(state, net, steps["positions"], rng)
        state, accepted_beta0 = mh_update_intercept(state, net, steps["intercept"], rng)
        history["positions"].append(float(accepted.mean()))
        history["intercept"].append(float(accepted_beta0))

        if (sweep + 1) % config.tune_interval == 0:
            steps = tune_step_sizes(history, steps, config.target_accept_low, config.target_accept_high)
            history = {"positions": [], "intercept": []}

        value = _no_cluster_log_posterior(state, net)
        if value > best:
            best = value
            best_X, best_beta0 = state.positions.X.copy(), state.groups.beta0  # pylint: disable=invalid-name

    logger.debug("Position refinement finished with log posterior %.4f", best)
    return best_X, best_beta0


def _kmeans_groups(
    X: np.ndarray, hyper: Hyperparams, n_groups: int, rng: np.random.Generator  # pylint: disable=invalid-name
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    n_times, n_actors, p = X.shape
    trajectories = np.swapaxes(X, 0, 1).reshape(n_actors, n_times * p)
    n_clusters = min(n_groups, n_actors)

    kmeans = KMeans(n_clusters=n_clusters, n_init=10, random_state=int(rng.integers(2**31 - 1)))
    assignment = kmeans.fit_predict(trajectories)

    mu = hyper.prior_mean(p)[None, :] + np.sqrt(hyper.tau2) * rng.standard_normal((n_groups, p))
    sigma2 = sample_inv_gamma(np.full(n_groups, hyper.a / 2.0), hyper.b / 2.0, rng)

    for k in range(n_clusters):
        members = X[:, assignment == k, :].reshape(-1, p)
        if members.shape[0] == 0:
            continue
        mu[k] = members.mean(axis=0)
        sigma2[k] = max(float(np.mean((members - mu[k]) ** 2)), MIN_GROUP_VARIANCE)

    Z = np.repeat(assignment[None, :], n_times, axis=0).astype(np.int64)  # pylint: disable=invalid-name
    return Z, mu, sigma2


def initialize_state(net: DynamicNetwork, config: SamplerConfig, rng: np.random.Generator) -> ModelState:
    """
    Builds the initial state of a chain.

    Args:
        net (DynamicNetwork): Observed networks.
        config (SamplerConfig): Sampler configuration (sizes, steps, refinement sweeps).
        rng (np.random.Generator): Random generator of the chain.

    Returns:
        ModelState: The initial state.
    """
    n_groups, p = config.L, config.p
    logger.info("Initializing positions for n=%d, T=%d, p=%d", net.n, net.T, p)

    X = initial_positions(net, p)  # pylint: disable=invalid-name
    density = float(np.clip(net.density().mean(), DENSITY_CLIP, 1.0 - DENSITY_CLIP))
    rows, cols = net.dyads()
    mean_distance = float(distance_tensor(X)[:, rows, cols].mean()) if rows.size > 0 else 0.0
    beta0 = float(logit(density)) + mean_distance

    hyper = default_hyperparams(net.n, p, mu_beta0=beta0, sigma2_beta0=2.0)
    X, beta0 = refine_positions(net, X, beta0, hyper, config, rng)  # pylint: disable=invalid-name

    overrides = {"mu_beta0": beta0, "sigma2_beta0": 2.0, "mu_lambda": 0.9, "sigma2_lambda": 0.01}
    overrides.update(config.hyperparam_values)
    hyper = default_hyperparams(net.n, p, **overrides)

    Z, mu, sigma2 = _kmeans_groups(X, hyper, n_groups, rng)  # pylint: disable=invalid-name

    beta = sample_dirichlet(np.full(n_groups, hyper.gamma / n_groups), rng)
    pi0 = sample_dirichlet(hyper.alpha0 * beta, rng)
    row_prior = hyper.alpha * beta[None, :] + hyper.kappa * np.eye(n_groups)
    Pi = sample_dirichlet(np.broadcast_to(row_prior, (net.T - 1, n_groups, n_groups)), rng)  # pylint: disable=invalid-name

    logger.info("Initialized intercept %.4f and %d k-means groups", beta0, min(n_groups, net.n))
    return ModelState(
        positions=LatentPositions(X=X),
        labels=LabelSequences(Z=Z),
        trans=TransitionStructure(beta=beta, pi0=pi0, Pi=Pi),
        groups=GroupParams(mu=mu, sigma2=sigma2, lambda_=config.init_lambda, beta0=beta0),
        hyper=hyper,
    )
