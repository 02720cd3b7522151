"""
Fixtures building small networks, model states and chains for unit tests.
"""

# pylint: disable=redefined-outer-name, invalid-name

from typing import List, Optional

import numpy as np
import pytest

from hdp_lpcm.model import (
    GroupParams,
    Hyperparams,
    LabelSequences,
    LatentPositions,
    ModelState,
    TransitionStructure,
)
from hdp_lpcm.network import DynamicNetwork
from hdp_lpcm.sampling import Chain, RngProvenance, SamplerConfig, make_rng
from hdp_lpcm.simulation import sample_network


def random_transitions(T: int, L: int, rng: np.random.Generator) -> TransitionStructure:
    beta = rng.dirichlet(np.ones(L))
    pi0 = rng.dirichlet(np.ones(L))
    Pi = rng.dirichlet(np.ones(L), size=(max(T - 1, 0), L))
    return TransitionStructure(beta=beta, pi0=pi0, Pi=Pi.reshape(max(T - 1, 0), L, L))


def random_state(n: int, T: int, p: int, L: int, seed: int = 0, hyper: Optional[Hyperparams] = None) -> ModelState:
    """
    A valid state with random entries, not drawn from the model.
    """
    rng = np.random.default_rng(seed)
    return ModelState(
        positions=LatentPositions(X=rng.normal(size=(T, n, p))),
        labels=LabelSequences(Z=rng.integers(0, L, size=(T, n))),
        trans=random_transitions(T, L, rng),
        groups=GroupParams(
            mu=rng.normal(size=(L, p)),
            sigma2=rng.uniform(0.3, 1.5, size=L),
            lambda_=float(rng.uniform(0.2, 0.9)),
            beta0=float(rng.normal()),
        ),
        hyper=hyper if hyper is not None else Hyperparams(mu0=np.zeros(p)),
    )


def network_for(state: ModelState, seed: int = 0) -> DynamicNetwork:
    return sample_network(state.positions.X, state.groups.beta0, make_rng(seed))


def state_with_labels(Z: np.ndarray, L: int, p: int = 2, seed: int = 0) -> ModelState:
    state = random_state(Z.shape[1], Z.shape[0], p, L, seed)
    state.labels = LabelSequences(Z=np.asarray(Z))
    return state


def chain_of(samples: List[ModelState], seed: int = 0) -> Chain:
    """
    A chain holding the given samples, with a sampler configuration that expects exactly that many.
    """
    config = SamplerConfig(n_tune=0, n_burn=0, n_keep=len(samples), L=samples[0].L if samples else 3, seed=seed)
    return Chain(
        samples=samples,
        log_post=[0.0] * len(samples),
        config=config,
        rng_provenance=RngProvenance(seed=seed),
        n=samples[0].n if samples else 0,
        T=samples[0].T if samples else 0,
    )


@pytest.fixture
def small_state() -> ModelState:
    return random_state(n=4, T=2, p=2, L=3, seed=7)


@pytest.fixture
def small_network(small_state) -> DynamicNetwork:
    return network_for(small_state, seed=11)


@pytest.fixture
def three_sample_chain() -> Chain:
    """
    Three samples of four actors at a single time step: labels `(0, 0, 1, 1)` twice, `(0, 1, 0, 1)` once.
    """
    labels = [np.array([[0, 0, 1, 1]]), np.array([[0, 0, 1, 1]]), np.array([[0, 1, 0, 1]])]
    return chain_of([state_with_labels(Z, L=3, seed=k) for k, Z in enumerate(labels)])
