# pylint: disable=unused-argument, unused-import, redefined-outer-name, protected-access, missing-module-docstring, missing-class-docstring
# pyright: reportGeneralTypeIssues=false

import numpy as np
import pytest
from scipy import stats

from hdp_lpcm.exceptions import ParameterError
from hdp_lpcm.model import HyperparamToggles
from hdp_lpcm.sampling import (
    AuxCounts,
    compute_transition_counts,
    default_hyperparams,
    make_rng,
    sample_aux_tables,
    sample_concentration_escobar_west,
    sample_hyperparams,
    sample_overrides,
)
from tests.fixtures.states import random_state, small_state


def only(**enabled) -> HyperparamToggles:
    return HyperparamToggles.fixed().model_copy(update=enabled)


def test_default_hyperpriors_match_their_moments():
    hyper = default_hyperparams(100, 2)

    assert hyper.tau2 == pytest.approx(2.0)
    tau2_prior = stats.invgamma(hyper.a_tau / 2, scale=hyper.b_tau / 2)
    assert tau2_prior.mean() == pytest.approx(2.0)
    assert tau2_prior.std() == pytest.approx(8.0)

    sigma2_prior_mode = (hyper.b / 2) / (hyper.a / 2 + 1)
    assert hyper.a == 2.0
    assert sigma2_prior_mode == pytest.approx(2.0)

    b_prior = stats.gamma(hyper.c / 2, scale=2 / hyper.d)
    assert b_prior.mean() == pytest.approx(hyper.b)
    assert b_prior.std() == pytest.approx(4 * hyper.b)

    assert np.array_equal(hyper.mu0, np.zeros(2))
    assert (hyper.a_gamma, hyper.b_gamma) == (1.0, 0.1)
    assert (hyper.a_alpha_kappa, hyper.b_alpha_kappa) == (5.0, 0.1)
    assert (hyper.a_rho, hyper.b_rho) == (8.0, 2.0)


def test_default_hyperparams_accept_overrides():
    hyper = default_hyperparams(27, 3, kappa=9.0, tau2=0.5)

    assert hyper.tau2 == 0.5
    assert hyper.rho == pytest.approx(0.9)


def test_escobar_west_is_positive():
    rng = make_rng(0)
    for K, N in ((1, 1), (3, 10), (40, 50)):
        assert sample_concentration_escobar_west(K, N, 1.0, 0.1, 2.0, rng) > 0


def test_escobar_west_without_data_draws_the_prior():
    rng = make_rng(1)
    draws = np.array([sample_concentration_escobar_west(0, 0, 2.0, 4.0, 1.0, rng) for _ in range(20_000)])

    assert abs(draws.mean() - 0.5) < 4 * np.sqrt(2.0) / 4.0 / np.sqrt(draws.size)


def test_escobar_west_parameter_error():
    with pytest.raises(ParameterError):
        sample_concentration_escobar_west(1, 5, -0.5, 1.0, 1.0, make_rng(2))


def test_escobar_west_stationary_distribution():
    # with one component among one observation the posterior equals the Gamma(1, 1) prior
    rng = make_rng(3)
    value, draws = 1.0, []
    for _ in range(20_000):
        value = sample_concentration_escobar_west(1, 1, 1.0, 1.0, value, rng)
        draws.append(value)

    assert np.mean(draws) == pytest.approx(1.0, abs=0.1)
    assert np.var(draws) == pytest.approx(1.0, abs=0.3)


def test_escobar_west_grows_with_components():
    rng = make_rng(4)

    def chain_mean(K: int) -> float:
        value, total = 1.0, 0.0
        for _ in range(5_000):
            value = sample_concentration_escobar_west(K, 100, 1.0, 0.1, value, rng)
            total += value
        return total / 5_000

    assert chain_mean(50) > chain_mean(2)


def test_tau2_without_group_spread():
    state = random_state(n=3, T=2, p=2, L=1, seed=1)
    state = state.model_copy(update={"groups": state.groups.model_copy(update={"mu": np.zeros((1, 2))})})
    counts = compute_transition_counts(state.labels, 1)
    aux = sample_aux_tables(counts, state.trans.beta, 1.0, 1.0, 4.0, make_rng(0))
    aux = sample_overrides(aux, state.trans.beta, 0.8, make_rng(0))
    hyper = state.hyper
    rng = make_rng(5)

    draws = np.array([sample_hyperparams(state, counts, aux, rng, only(tau2=True)).tau2 for _ in range(20_000)])
    posterior = stats.invgamma((hyper.a_tau + 1) / 2, scale=hyper.b_tau / 2)

    assert abs(draws.mean() - posterior.mean()) < 4 * posterior.std() / np.sqrt(draws.size)


def test_rho_without_overrides_draws_the_prior(small_state):
    counts = compute_transition_counts(small_state.labels, small_state.L)
    aux = AuxCounts(
        m_init=np.zeros(3, dtype=int),
        m_trans=np.zeros((1, 3, 3), dtype=int),
        w=np.zeros((1, 3), dtype=int),
        m_bar_init=np.zeros(3, dtype=int),
        m_bar_trans=np.zeros((1, 3, 3), dtype=int),
    )
    rng = make_rng(6)
    total = small_state.hyper.alpha + small_state.hyper.kappa

    samples = [sample_hyperparams(small_state, counts, aux, rng, only(rho=True)) for _ in range(10_000)]
    rhos = np.array([hyper.rho for hyper in samples])

    assert abs(rhos.mean() - 0.8) < 4 * stats.beta(8, 2).std() / np.sqrt(rhos.size)
    for hyper in samples[:20]:
        assert hyper.alpha + hyper.kappa == pytest.approx(total)
        assert hyper.kappa / (hyper.alpha + hyper.kappa) == pytest.approx(hyper.rho, abs=1e-12)


def test_concentration_total_keeps_the_sticky_fraction(small_state):
    counts = compute_transition_counts(small_state.labels, small_state.L)
    rng = make_rng(10)
    aux = sample_aux_tables(counts, small_state.trans.beta, 1.0, 1.0, 4.0, rng)
    aux = sample_overrides(aux, small_state.trans.beta, 0.8, rng)
    before = small_state.hyper

    hyper = sample_hyperparams(small_state, counts, aux, rng, only(alpha_kappa=True))

    assert hyper.rho == pytest.approx(before.rho, abs=1e-12)
    assert hyper.alpha + hyper.kappa != pytest.approx(before.alpha + before.kappa)
    assert hyper.rho == hyper.with_concentrations(hyper.alpha, hyper.kappa).rho
    assert hyper.gamma == before.gamma


def test_all_updates_keep_a_valid_state(small_state):
    counts = compute_transition_counts(small_state.labels, small_state.L)
    rng = make_rng(7)
    aux = sample_aux_tables(counts, small_state.trans.beta, 1.0, 1.0, 4.0, rng)
    aux = sample_overrides(aux, small_state.trans.beta, 0.8, rng)

    hyper = sample_hyperparams(small_state, counts, aux, rng)

    for name in ("tau2", "b", "gamma", "alpha0", "alpha", "kappa"):
        assert getattr(hyper, name) > 0
    assert 0 < hyper.rho < 1
    assert hyper.rho == pytest.approx(hyper.kappa / (hyper.alpha + hyper.kappa))


def test_fixed_toggles_change_nothing(small_state):
    counts = compute_transition_counts(small_state.labels, small_state.L)
    aux = sample_aux_tables(counts, small_state.trans.beta, 1.0, 1.0, 4.0, make_rng(8))

    hyper = sample_hyperparams(small_state, counts, aux, make_rng(9), HyperparamToggles.fixed())

    before = small_state.hyper.model_dump(exclude={"mu0"})
    assert hyper.model_dump(exclude={"mu0"}) == before
