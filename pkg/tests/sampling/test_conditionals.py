# pylint: disable=unused-argument, unused-import, redefined-outer-name, protected-access, missing-module-docstring, missing-class-docstring
# pyright: reportGeneralTypeIssues=false

import math

import numpy as np
import pytest
from scipy import stats

from hdp_lpcm.model import label_log_densities
from hdp_lpcm.sampling import (
    compute_transition_counts,
    make_rng,
    sample_group_means,
    sample_group_variances,
    sample_lambda,
)
from hdp_lpcm.sampling.conditionals import group_mean_conditional, group_variance_conditional, lambda_conditional
from tests.fixtures.states import random_state, state_with_labels


def emission_total(state) -> float:
    return float(np.sum(label_log_densities(state.positions.X, state.labels.Z, state.trans, state.groups)))


def with_groups(state, **update):
    return state.model_copy(update={"groups": state.groups.model_copy(update=update)})


def test_group_means_single_time_step():
    state = state_with_labels(np.array([[0, 0, 1, 1, 1]]), L=3, seed=1)
    counts = compute_transition_counts(state.labels, 3)
    X, sigma2, tau2 = state.positions.X[0], state.groups.sigma2, state.hyper.tau2

    mean, var = group_mean_conditional(state, counts)

    expected_var = 1.0 / (2 / sigma2[0] + 1 / tau2)
    assert var[0] == pytest.approx(expected_var)
    assert np.allclose(mean[0], expected_var * X[:2].sum(axis=0) / sigma2[0])
    assert var[2] == pytest.approx(tau2)
    assert np.allclose(mean[2], 0.0)


def test_group_mean_conditional_is_the_exact_posterior():
    state = random_state(n=5, T=3, p=2, L=2, seed=2)
    counts = compute_transition_counts(state.labels, 2)
    mean, var = group_mean_conditional(state, counts)

    differences = []
    for shift in (-1.0, 0.0, 0.7):
        mu = state.groups.mu.copy()
        mu[0] = np.array([shift, 2 * shift])
        candidate = with_groups(state, mu=mu)
        prior = np.sum(stats.norm.logpdf(mu[0], 0.0, math.sqrt(state.hyper.tau2)))
        conditional = np.sum(stats.norm.logpdf(mu[0], mean[0], math.sqrt(var[0])))
        differences.append(emission_total(candidate) + prior - conditional)

    assert np.allclose(differences, differences[0], atol=1e-8)


def test_group_variance_conditional_is_the_exact_posterior():
    state = random_state(n=5, T=3, p=2, L=2, seed=3)
    counts = compute_transition_counts(state.labels, 2)
    shape, scale = group_variance_conditional(state, counts)
    hyper = state.hyper

    differences = []
    for value in (0.2, 0.9, 3.0):
        sigma2 = state.groups.sigma2.copy()
        sigma2[1] = value
        candidate = with_groups(state, sigma2=sigma2)
        prior = stats.invgamma.logpdf(value, hyper.a / 2, scale=hyper.b / 2)
        conditional = stats.invgamma.logpdf(value, shape[1], scale=scale[1])
        differences.append(emission_total(candidate) + prior - conditional)

    assert np.allclose(differences, differences[0], atol=1e-8)


def test_variance_of_single_time_step():
    state = state_with_labels(np.array([[1, 1, 1]]), L=2, seed=4)
    counts = compute_transition_counts(state.labels, 2)
    X, mu, hyper = state.positions.X[0], state.groups.mu, state.hyper

    shape, scale = group_variance_conditional(state, counts)

    assert shape[1] == pytest.approx((3 * 2 + hyper.a) / 2)
    assert scale[1] == pytest.approx((hyper.b + np.sum((X - mu[1]) ** 2)) / 2)
    assert (shape[0], scale[0]) == pytest.approx((hyper.a / 2, hyper.b / 2))


def test_lambda_conditional_is_the_exact_posterior():
    state = random_state(n=4, T=3, p=2, L=2, seed=5)
    mean, var = lambda_conditional(state)
    hyper = state.hyper

    differences = []
    for value in (0.2, 0.5, 0.8):
        candidate = with_groups(state, lambda_=value)
        prior = stats.norm.logpdf(value, hyper.mu_lambda, math.sqrt(hyper.sigma2_lambda))
        conditional = stats.norm.logpdf(value, mean, math.sqrt(var))
        differences.append(emission_total(candidate) + prior - conditional)

    assert np.allclose(differences, differences[0], atol=1e-8)


def test_lambda_without_transitions_is_the_prior():
    state = random_state(n=3, T=1, p=2, L=2, seed=6)
    assert lambda_conditional(state) == (state.hyper.mu_lambda, state.hyper.sigma2_lambda)


def test_sampled_moments():
    state = random_state(n=6, T=3, p=2, L=2, seed=7)
    counts = compute_transition_counts(state.labels, 2)
    rng = make_rng(0)
    n_draws = 10_000

    mean, var = group_mean_conditional(state, counts)
    means = np.array([sample_group_means(state, counts, rng) for _ in range(n_draws)])
    assert np.all(np.abs(means.mean(axis=0) - mean) < 4 * np.sqrt(var)[:, None] / math.sqrt(n_draws))

    shape, scale = group_variance_conditional(state, counts)
    variances = np.array([sample_group_variances(state, counts, rng) for _ in range(n_draws)])
    posterior = stats.invgamma(shape, scale=scale)
    assert np.all(np.abs(variances.mean(axis=0) - posterior.mean()) < 4 * posterior.std() / math.sqrt(n_draws))

    loc, lam_var = lambda_conditional(state)
    sd = math.sqrt(lam_var)
    truncated = stats.truncnorm((0 - loc) / sd, (1 - loc) / sd, loc=loc, scale=sd)
    lambdas = np.array([sample_lambda(state, rng) for _ in range(n_draws)])
    assert np.all((lambdas > 0) & (lambdas < 1))
    assert abs(lambdas.mean() - truncated.mean()) < 4 * truncated.std() / math.sqrt(n_draws)
