# pylint: disable=unused-argument, unused-import, redefined-outer-name, protected-access, missing-module-docstring, missing-class-docstring
# pyright: reportGeneralTypeIssues=false

import numpy as np
import pytest
from scipy.integrate import trapezoid
from scipy.signal import lfilter

from hdp_lpcm.exceptions import ParameterError, UndefinedStatisticError
from hdp_lpcm.summary import autocorrelation, ess_and_acf, posterior_kde


def test_autocorrelation_of_an_alternating_series():
    acf = autocorrelation(np.array([1.0, -1.0, 1.0, -1.0]), 2)

    assert np.allclose(acf, [1.0, -0.75, 0.5])


def test_autocorrelation_is_truncated_to_the_series():
    assert autocorrelation(np.arange(5.0), 100).shape == (5,)


def test_independent_draws():
    draws = np.random.default_rng(0).normal(size=20_000)
    ess, acf = ess_and_acf(draws, 10)

    assert ess == pytest.approx(20_000, rel=0.15)
    assert acf.shape == (11,)
    assert acf[0] == 1.0


def test_autoregressive_draws():
    phi, n = 0.5, 20_000
    noise = np.random.default_rng(1).normal(size=n)
    series = lfilter([1.0], [1.0, -phi], noise)

    ess, acf = ess_and_acf(series, 3)

    assert ess == pytest.approx(n * (1 - phi) / (1 + phi), rel=0.2)
    assert acf[1] == pytest.approx(phi, abs=0.03)


def test_degenerate_series():
    with pytest.raises(UndefinedStatisticError):
        ess_and_acf(np.full(10, 3.0))
    with pytest.raises(ParameterError):
        ess_and_acf(np.array([1.0, 2.0, 3.0]))


def test_density_estimate_integrates_to_one():
    draws = np.random.default_rng(2).gamma(3.0, size=2_000)
    grid, density = posterior_kde(draws)

    assert grid.shape == density.shape == (200,)
    assert grid[0] < draws.min() and grid[-1] > draws.max()
    assert np.all(density >= 0)
    assert trapezoid(density, grid) == pytest.approx(1.0, abs=0.01)


def test_density_of_a_constant_trace():
    with pytest.raises(UndefinedStatisticError):
        posterior_kde(np.ones(20))
    with pytest.raises(UndefinedStatisticError):
        posterior_kde(np.array([1.0]))
