# pylint: disable=unused-argument, unused-import, redefined-outer-name, protected-access, missing-module-docstring, missing-class-docstring
# pyright: reportGeneralTypeIssues=false

import math

import numpy as np
import pytest
from scipy import stats

from hdp_lpcm.exceptions import DimensionError, LabelError
from hdp_lpcm.model import (
    GroupParams,
    TransitionStructure,
    emission_log_densities,
    emission_log_density,
    label_log_densities,
    trajectory_log_density,
)
from tests.fixtures.states import random_state, random_transitions, small_state


def normal_logpdf(x, mean, var) -> float:
    return float(np.sum(stats.norm.logpdf(x, loc=mean, scale=math.sqrt(var))))


def test_density_at_the_mean():
    groups = GroupParams(mu=np.array([[0.7]]), sigma2=np.array([1.0]), lambda_=0.5, beta0=0.0)

    assert emission_log_density(np.array([0.7]), None, 0, groups) == pytest.approx(-0.5 * math.log(2 * math.pi))


def test_full_blending_ignores_previous_position():
    # lambda = 1 lies outside the open interval of sampled states, so validation is skipped
    groups = GroupParams.model_construct(
        mu=np.array([[1.0, 2.0]]), sigma2=np.array([0.5]), lambda_=1.0, beta0=0.0
    )

    value = emission_log_density(np.array([1.0, 2.0]), np.array([-9.0, 4.0]), 0, groups)
    assert value == pytest.approx(-math.log(2 * math.pi * 0.5))


def test_blended_mean():
    groups = GroupParams(mu=np.array([[1.0, 0.0]]), sigma2=np.array([0.25]), lambda_=0.8, beta0=0.0)

    value = emission_log_density(np.array([0.8, 0.0]), np.array([0.0, 0.0]), 0, groups)
    assert value == pytest.approx(-math.log(2 * math.pi * 0.25))


def test_label_out_of_range():
    groups = GroupParams(mu=np.zeros((2, 2)), sigma2=np.ones(2), lambda_=0.5, beta0=0.0)

    with pytest.raises(LabelError):
        emission_log_density(np.zeros(2), None, 2, groups)


def test_vectorized_emissions_match_scalar(small_state):
    X, groups = small_state.positions.X, small_state.groups
    table = emission_log_densities(X, groups)

    assert table.shape == (2, 4, 3)
    for i in range(4):
        for g in range(3):
            assert table[0, i, g] == pytest.approx(emission_log_density(X[0, i], None, g, groups))
            assert table[1, i, g] == pytest.approx(emission_log_density(X[1, i], X[0, i], g, groups))


def test_single_group_trajectory_is_sum_of_emissions():
    state = random_state(n=1, T=3, p=2, L=1, seed=2)
    X_i, groups = state.positions.X[:, 0], state.groups

    emissions = emission_log_density(X_i[0], None, 0, groups) + sum(
        emission_log_density(X_i[t], X_i[t - 1], 0, groups) for t in (1, 2)
    )
    assert trajectory_log_density(X_i, np.zeros(3, dtype=int), state.trans, groups) == pytest.approx(emissions)


def test_single_time_step():
    state = random_state(n=1, T=1, p=2, L=3, seed=4)
    X_i = state.positions.X[:, 0]

    expected = math.log(state.trans.pi0[2]) + emission_log_density(X_i[0], None, 2, state.groups)
    assert trajectory_log_density(X_i, np.array([2]), state.trans, state.groups) == pytest.approx(expected)


def test_two_step_hand_expansion():
    state = random_state(n=1, T=2, p=2, L=2, seed=8)
    X_i, trans, groups = state.positions.X[:, 0], state.trans, state.groups
    lam = groups.lambda_

    expected = (
        math.log(trans.pi0[1])
        + normal_logpdf(X_i[0], groups.mu[1], groups.sigma2[1])
        + math.log(trans.Pi[0, 1, 0])
        + normal_logpdf(X_i[1], lam * groups.mu[0] + (1 - lam) * X_i[0], groups.sigma2[0])
    )
    assert trajectory_log_density(X_i, np.array([1, 0]), trans, groups) == pytest.approx(expected, abs=1e-10)


def test_zero_transition_probability_is_minus_infinity():
    state = random_state(n=1, T=2, p=1, L=2, seed=1)
    trans = TransitionStructure(beta=state.trans.beta, pi0=np.array([1.0, 0.0]), Pi=np.array([[[1.0, 0.0], [0.0, 1.0]]]))

    assert trajectory_log_density(state.positions.X[:, 0], np.array([1, 1]), trans, state.groups) == -math.inf
    assert trajectory_log_density(state.positions.X[:, 0], np.array([0, 1]), trans, state.groups) == -math.inf
    assert math.isfinite(trajectory_log_density(state.positions.X[:, 0], np.array([0, 0]), trans, state.groups))


def test_trajectory_errors(small_state):
    X_i = small_state.positions.X[:, 0]

    with pytest.raises(DimensionError):
        trajectory_log_density(X_i, np.array([0, 0, 0]), small_state.trans, small_state.groups)
    with pytest.raises(LabelError):
        trajectory_log_density(X_i, np.array([0, 3]), small_state.trans, small_state.groups)


def test_all_actors_at_once(small_state):
    X, Z = small_state.positions.X, small_state.labels.Z
    values = label_log_densities(X, Z, small_state.trans, small_state.groups)

    for i in range(small_state.n):
        expected = trajectory_log_density(X[:, i], Z[:, i], small_state.trans, small_state.groups)
        assert values[i] == pytest.approx(expected)
