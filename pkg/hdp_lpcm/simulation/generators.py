"""
Forward simulation of dynamic networks: the location-driven scenarios and exact draws from the model.
"""

from typing import Iterable, List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.special import expit

from hdp_lpcm.exceptions import DegenerateLocationsError, ParameterError
from hdp_lpcm.logger import logger
from hdp_lpcm.model import (
    GroupParams,
    Hyperparams,
    LabelSequences,
    LatentPositions,
    ModelState,
    TransitionStructure,
    distance_tensor,
)
from hdp_lpcm.network import DynamicNetwork
from hdp_lpcm.sampling.random import make_rng, sample_dirichlet, sample_inv_gamma, sample_truncated_normal
from hdp_lpcm.simulation.spec import SimSpec


class SimulationResult(BaseModel):
    """
    A simulated network with the state that generated it.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    net: DynamicNetwork
    truth: ModelState
    attempts: int = 1


def transition_row_from_locations(g: int, mu: np.ndarray, const: float, active: Iterable[int]) -> np.ndarray:
    """
    Transition probabilities out of group `g` (0-based). Active groups `k != g` get weights inversely
    proportional to their distance from `g`, `g` itself (if active) gets `const` times the largest of
    these weights. Inactive groups get zero.

    Args:
        g (int): Group left.
        mu (np.ndarray): Group locations of shape `(G, p)`.
        const (float): Self-transition constant.
        active (Iterable[int]): 0-based groups that can be entered.

    Raises:
        ParameterError: If no group is active.
        DegenerateLocationsError: If an active group shares the location of `g`.

    Returns:
        np.ndarray: Probabilities of length `G`.
    """
    active = sorted(set(int(k) for k in active))
    if len(active) == 0:
        raise ParameterError("active", active, "a non-empty set of groups")

    weights = np.zeros(mu.shape[0])
    others = [k for k in active if k != g]

    for k in others:
        distance = float(np.linalg.norm(mu[k] - mu[g]))
        if distance == 0:
            raise DegenerateLocationsError(g + 1, k + 1)
        weights[k] = 1.0 / distance

    if g in active:
        weights[g] = const * weights[others].max() if others else 1.0

    return weights / weights.sum()


def _transition_matrix(mu: np.ndarray, const: float, active: Sequence[int]) -> np.ndarray:
    return np.stack([transition_row_from_locations(g, mu, const, active) for g in range(mu.shape[0])])


def sample_network(X: np.ndarray, beta0: float, rng: np.random.Generator) -> DynamicNetwork:  # pylint: disable=invalid-name
    """
    Draws the adjacency matrices given positions `(T, n, p)` and the intercept. Dyads `j < i` are drawn in
    time-major, row-major order.
    """
    n_times, n_actors, _ = X.shape
    rows, cols = np.tril_indices(n_actors, k=-1)
    probabilities = expit(beta0 - distance_tensor(X)[:, rows, cols])
    edges = (rng.random(probabilities.shape) < probabilities).astype(np.uint8)

    adjacency = np.zeros((n_times, n_actors, n_actors), dtype=np.uint8)
    adjacency[:, rows, cols] = edges
    adjacency[:, cols, rows] = edges
    return DynamicNetwork(adjacency=adjacency)


def sample_trajectories(
    n: int, trans: TransitionStructure, groups: GroupParams, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Draws labels and positions of `n` actors from the hidden Markov model with autoregressive emissions.

    Returns:
        Tuple[np.ndarray, np.ndarray]: Labels `(T, n)` and positions `(T, n, p)`.
    """
    n_times = trans.Pi.shape[0] + 1
    n_groups, p = groups.mu.shape
    lam, mu, sd = groups.lambda_, groups.mu, np.sqrt(groups.sigma2)

    Z = np.empty((n_times, n), dtype=np.int64)  # pylint: disable=invalid-name
    X = np.empty((n_times, n, p))  # pylint: disable=invalid-name

    Z[0] = rng.choice(n_groups, size=n, p=trans.pi0)
    X[0] = mu[Z[0]] + sd[Z[0], None] * rng.standard_normal((n, p))

    for t in range(1, n_times):
        cumulative = np.cumsum(trans.Pi[t - 1][Z[t - 1]], axis=1)
        draws = rng.random(n)[:, None]
        Z[t] = np.minimum(np.sum(cumulative < draws * cumulative[:, -1:], axis=1), n_groups - 1)
        mean = lam * mu[Z[t]] + (1.0 - lam) * X[t - 1]
        X[t] = mean + sd[Z[t], None] * rng.standard_normal((n, p))

    return Z, X


def _degenerate_slices(net: DynamicNetwork) -> List[int]:
    density = net.density()
    return [t for t in range(net.T) if density[t] in (0.0, 1.0)]


def _draw_scenario(spec: SimSpec, rng: np.random.Generator) -> Tuple[ModelState, DynamicNetwork]:
    mu = spec.group_locations
    n_groups = spec.G

    spread = sample_inv_gamma(np.full(n_groups, spec.sigma_prior[0]), spec.sigma_prior[1], rng)
    sigma2 = spread**2 if spec.sigma_target == "sd" else spread

    first = spec.active(0)
    pi0 = np.zeros(n_groups)
    pi0[first] = sample_dirichlet(np.full(len(first), spec.pi0_concentration), rng)

    Pi = np.zeros((spec.T - 1, n_groups, n_groups))  # pylint: disable=invalid-name
    for t in range(1, spec.T):
        Pi[t - 1] = _transition_matrix(mu, spec.const_per_time[t], spec.active(t))

    trans = TransitionStructure(beta=np.full(n_groups, 1.0 / n_groups), pi0=pi0, Pi=Pi)
    groups = GroupParams(mu=mu.copy(), sigma2=sigma2, lambda_=spec.lambda_, beta0=spec.beta0)
    Z, X = sample_trajectories(spec.n, trans, groups, rng)  # pylint: disable=invalid-name

    truth = ModelState(
        positions=LatentPositions(X=X),
        labels=LabelSequences(Z=Z),
        trans=trans,
        groups=groups,
        hyper=Hyperparams(),
    )
    return truth, sample_network(X, spec.beta0, rng)


def attempt_seed(seed: int, attempt: int) -> int:
    """
    Seed of retry `attempt` (1-based) of a scenario seeded with `seed`, spawned from it.
    """
    child = np.random.SeedSequence(seed, spawn_key=(attempt,))
    return int(child.generate_state(1, dtype=np.uint64)[0])


def simulate_from_spec(spec: SimSpec, rng: np.random.Generator) -> SimulationResult:
    """
    Simulates a network from a location-driven scenario. If a slice has no edges or all edges, the whole
    draw is repeated at most `spec.max_retries` times. The first draw uses `rng`, retry `k` uses a fresh
    generator seeded with `attempt_seed(spec.seed, k)` so every attempt can be reproduced on its own.
    """
    attempt = 0
    while True:
        truth, net = _draw_scenario(spec, rng)
        degenerate = _degenerate_slices(net)

        if not degenerate:
            return SimulationResult(net=net, truth=truth, attempts=attempt + 1)
        if attempt == spec.max_retries:
            logger.warning("Slices %s stay empty or complete after %d retries", degenerate, attempt)
            return SimulationResult(net=net, truth=truth, attempts=attempt + 1)

        attempt += 1
        rng = make_rng(attempt_seed(spec.seed, attempt))
        logger.warning("Simulated slices %s are empty or complete, retrying (attempt %d)", degenerate, attempt)


def simulate_homogeneous(spec: SimSpec, rng: np.random.Generator) -> SimulationResult:
    """
    Network whose groups and transition matrix are shared by all time points.
    """
    if any(sorted(set(active)) != sorted(set(spec.active_sets[0])) for active in spec.active_sets):
        raise ParameterError("active_sets", spec.active_sets, "the same groups at every time")
    if len(set(spec.const_per_time[1:])) > 1:
        raise ParameterError("const_per_time", spec.const_per_time, "a single constant after the first time")
    return simulate_from_spec(spec, rng)


def simulate_inhomogeneous(spec: SimSpec, rng: np.random.Generator) -> SimulationResult:
    """
    Network whose set of active groups and self-transition constant change over time.
    """
    return simulate_from_spec(spec, rng)


def sample_generative(
    hyper: Hyperparams, n: int, T: int, p: int, L: int, rng: np.random.Generator  # pylint: disable=invalid-name
) -> Tuple[ModelState, DynamicNetwork]:
    """
    Exact forward draw of all parameters, labels, positions and networks from the model with fixed
    hyperparameters and `L` groups.
    """
    beta = sample_dirichlet(np.full(L, hyper.gamma / L), rng)
    pi0 = sample_dirichlet(hyper.alpha0 * beta, rng)
    row_prior = hyper.alpha * beta[None, :] + hyper.kappa * np.eye(L)
    Pi = sample_dirichlet(np.broadcast_to(row_prior, (T - 1, L, L)), rng)  # pylint: disable=invalid-name
    trans = TransitionStructure(beta=beta, pi0=pi0, Pi=Pi)

    mu = hyper.prior_mean(p)[None, :] + np.sqrt(hyper.tau2) * rng.standard_normal((L, p))
    sigma2 = sample_inv_gamma(np.full(L, hyper.a / 2.0), hyper.b / 2.0, rng)
    beta0 = float(hyper.mu_beta0 + np.sqrt(hyper.sigma2_beta0) * rng.standard_normal())
    lam = sample_truncated_normal(hyper.mu_lambda, hyper.sigma2_lambda, rng)
    groups = GroupParams(mu=mu, sigma2=sigma2, lambda_=lam, beta0=beta0)

    Z, X = sample_trajectories(n, trans, groups, rng)  # pylint: disable=invalid-name
    net = sample_network(X, beta0, rng)

    state = ModelState(
        positions=LatentPositions(X=X),
        labels=LabelSequences(Z=Z),
        trans=trans,
        groups=groups,
        hyper=hyper,
    )
    return state, net


def simulate_replications(spec: SimSpec, seeds: Iterable[int]) -> List[SimulationResult]:
    """
    Independent simulations of one scenario, one per seed. Each replication also seeds its retries.
    """
    return [simulate_from_spec(spec.model_copy(update={"seed": seed}), make_rng(seed)) for seed in seeds]
