# pylint: disable=unused-argument, unused-import, redefined-outer-name, protected-access, missing-module-docstring, missing-class-docstring
# pyright: reportGeneralTypeIssues=false

import numpy as np
import pytest

from hdp_lpcm.model import GroupParams, LatentPositions, log_posterior, position_log_likelihood_delta
from hdp_lpcm.network import DynamicNetwork
from hdp_lpcm.sampling import make_rng, mh_update_intercept, mh_update_positions, tune_step_sizes
from hdp_lpcm.sampling.metropolis import _position_prior_delta
from tests.fixtures.states import random_state, small_network, small_state


def test_zero_step_accepts_without_moving(small_state, small_network):
    before = small_state.positions.X.copy()
    beta0 = small_state.groups.beta0

    state, accepted = mh_update_positions(small_state, small_network, 0.0, make_rng(0))
    assert accepted.shape == (2, 4)
    assert np.all(accepted)
    assert np.array_equal(state.positions.X, before)

    state, accepted = mh_update_intercept(state, small_network, 0.0, make_rng(1))
    assert accepted
    assert state.groups.beta0 == beta0


@pytest.mark.parametrize("t, i", [(0, 1), (1, 3)])
def test_local_acceptance_ratio_matches_the_posterior(small_state, small_network, t, i):
    x_new = small_state.positions.X[t, i] + np.array([0.3, -0.2])
    moved = small_state.positions.X.copy()
    moved[t, i] = x_new
    candidate = small_state.model_copy(update={"positions": LatentPositions(X=moved)})

    local = _position_prior_delta(small_state, t, i, x_new) + position_log_likelihood_delta(
        small_network, small_state.positions.X, t, i, x_new, small_state.groups.beta0
    )
    full = log_posterior(candidate, small_network) - log_posterior(small_state, small_network)

    assert local == pytest.approx(full, abs=1e-9)


def test_positions_recover_their_prior_without_likelihood():
    state = random_state(n=1, T=1, p=2, L=1, seed=3)
    state.groups = GroupParams(mu=np.array([[1.0, -2.0]]), sigma2=np.array([0.5]), lambda_=0.5, beta0=0.0)
    net = DynamicNetwork(adjacency=np.zeros((1, 1, 1)))
    rng = make_rng(4)

    draws = []
    for _ in range(40_000):
        state, _ = mh_update_positions(state, net, 1.0, rng, likelihood_weight=0.0)
        draws.append(state.positions.X[0, 0].copy())
    draws = np.array(draws)[1_000:]

    assert np.allclose(draws.mean(axis=0), [1.0, -2.0], atol=0.05)
    assert np.allclose(draws.var(axis=0), 0.5, atol=0.06)


def test_intercept_recovers_its_prior_without_likelihood(small_state, small_network):
    rng = make_rng(5)
    hyper = small_state.hyper
    draws = []

    for _ in range(40_000):
        state, _ = mh_update_intercept(small_state, small_network, 2.0, rng, likelihood_weight=0.0)
        draws.append(state.groups.beta0)
    draws = np.array(draws)[1_000:]

    assert draws.mean() == pytest.approx(hyper.mu_beta0, abs=0.08)
    assert draws.var() == pytest.approx(hyper.sigma2_beta0, abs=0.2)


def test_likelihood_moves_the_intercept_toward_dense_networks():
    state = random_state(n=6, T=2, p=2, L=2, seed=6)
    state.positions.X[:] = 0.0
    full = DynamicNetwork(adjacency=np.ones((2, 6, 6)) - np.eye(6)[None])
    rng = make_rng(7)

    state.groups.beta0 = 0.0
    for _ in range(2_000):
        state, _ = mh_update_intercept(state, full, 0.5, rng)
    assert state.groups.beta0 > 1.0


def test_tuning_steps():
    steps = {"positions": 1.0, "intercept": 2.0}

    grown = tune_step_sizes({"positions": [1, 1, 0], "intercept": [1, 1, 1]}, steps)
    assert grown == pytest.approx({"positions": 1.1, "intercept": 2.2})

    shrunk = tune_step_sizes({"positions": [0, 0, 0, 1, 0], "intercept": [0.1]}, steps)
    assert shrunk == pytest.approx({"positions": 0.9, "intercept": 1.8})

    kept = tune_step_sizes({"positions": [0.3], "intercept": []}, steps)
    assert kept == steps
