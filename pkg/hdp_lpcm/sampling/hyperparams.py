"""
Hyperparameter samplers and the moment-matching defaults of the hyperpriors.

Gamma distributions of the concentrations are parameterized by shape and rate. The hyperprior of `b` is
`Gamma(c / 2, scale=2 / d)` and its conditional keeps that shape/scale form.
"""

from typing import Optional

import numpy as np

from hdp_lpcm.exceptions import ParameterError
from hdp_lpcm.logger import logger
from hdp_lpcm.model import HyperparamToggles, Hyperparams, ModelState
from hdp_lpcm.sampling.counts import AuxCounts, TransitionCounts
from hdp_lpcm.sampling.random import sample_inv_gamma

HYPERPRIOR_SD_RATIO = 4.0
DEFAULT_SIGMA_SHAPE = 2.0


def default_hyperparams(n: int, p: int, **overrides) -> Hyperparams:
    """
    Hyperparameters with priors scaled to the network size.

    The expected prior variance of the group centers is `n ** (2 / p) / 50`. `tau2` gets an inverse-gamma
    hyperprior with that mean and a standard deviation four times the mean, `b` is chosen so that the mode
    of the group variances equals the same value, and the gamma hyperprior of `b` has mean `b` and a
    standard deviation four times `b`.

    Args:
        n (int): Number of actors.
        p (int): Latent dimension.
        **overrides: Fields replacing the computed values.

    Returns:
        Hyperparams: The hyperparameters.
    """
    mean_tau2 = n ** (2.0 / p) / 50.0

    ig_shape = 2.0 + (1.0 / HYPERPRIOR_SD_RATIO) ** 2
    ig_scale = mean_tau2 * (ig_shape - 1.0)
    a = DEFAULT_SIGMA_SHAPE
    b = (a + 2.0) * mean_tau2
    c = 2.0 / HYPERPRIOR_SD_RATIO**2
    d = c / b

    values = {
        "tau2": mean_tau2,
        "a": a,
        "b": b,
        "a_tau": 2.0 * ig_shape,
        "b_tau": 2.0 * ig_scale,
        "c": c,
        "d": d,
        "mu0": np.zeros(p),
    }
    values.update(overrides)

    logger.debug(
        "Hyperprior constants: E[tau2]=%.6g, a_tau=%.6g, b_tau=%.6g, a=%.6g, b=%.6g, c=%.6g, d=%.6g",
        mean_tau2,
        values["a_tau"],
        values["b_tau"],
        values["a"],
        values["b"],
        values["c"],
        values["d"],
    )
    return Hyperparams(**values)


def sample_concentration_escobar_west(
    K: int, N: int, a: float, b: float, current: float, rng: np.random.Generator  # pylint: disable=invalid-name
) -> float:
    """
    Auxiliary-variable update of a Dirichlet process concentration with a `Gamma(a, rate=b)` prior,
    given `K` occupied components among `N` observations. Without components or observations the prior
    is returned as a fresh draw.

    Raises:
        ParameterError: If `a + K - 1 <= 0`.
    """
    if K == 0 or N == 0:
        return float(rng.gamma(a, 1.0 / b))

    if a + K - 1 <= 0:
        raise ParameterError("a + K - 1", a + K - 1, "a positive value")

    eta = rng.beta(current + 1.0, N)
    rate = b - np.log(eta)
    odds_shape, odds_rate = a + K - 1.0, N * rate
    weight = odds_shape / (odds_shape + odds_rate)

    shape = a + K if rng.random() < weight else a + K - 1.0
    return float(rng.gamma(shape, 1.0 / rate))


def _sample_alpha_plus_kappa(
    hyper: Hyperparams, counts: TransitionCounts, aux: AuxCounts, rng: np.random.Generator
) -> float:
    total = hyper.alpha + hyper.kappa
    restaurant_sizes = counts.n_trans.sum(axis=2).ravel()

    log_r = 0.0
    s = 0
    for size in restaurant_sizes:
        # an empty restaurant contributes r = 1 and s = 0
        if size == 0:
            continue
        log_r += float(np.log(rng.beta(total + 1.0, size)))
        s += int(rng.random() < size / (size + total))

    shape = hyper.a_alpha_kappa + int(aux.m_trans.sum()) - s
    rate = hyper.b_alpha_kappa - log_r
    return float(rng.gamma(shape, 1.0 / rate))


def sample_hyperparams(
    state: ModelState,
    counts: TransitionCounts,
    aux: AuxCounts,
    rng: np.random.Generator,
    toggles: Optional[HyperparamToggles] = None,
) -> Hyperparams:
    """
    Resamples the enabled hyperparameters in the order `tau2`, `b`, `gamma`, `alpha0`, `alpha + kappa`,
    `rho`, then sets `alpha = (1 - rho) (alpha + kappa)` and `kappa = rho (alpha + kappa)`.

    Args:
        state (ModelState): Current state.
        counts (TransitionCounts): Counts of the current labels.
        aux (AuxCounts): Auxiliary counts with overrides from the current sweep.
        rng (np.random.Generator): Random generator.
        toggles (HyperparamToggles, optional): Enabled updates. Defaults to all enabled.

    Returns:
        Hyperparams: Updated hyperparameters.
    """
    toggles = toggles if toggles is not None else HyperparamToggles()
    hyper = state.hyper
    groups = state.groups
    n_groups = state.L
    update = {}

    if toggles.tau2:
        sq = float(np.sum((groups.mu - hyper.prior_mean(state.p)[None, :]) ** 2))
        update["tau2"] = float(sample_inv_gamma((hyper.a_tau + n_groups) / 2.0, (hyper.b_tau + sq) / 2.0, rng))

    if toggles.b:
        shape = (hyper.c + n_groups * hyper.a) / 2.0
        scale = 2.0 / (hyper.d + float(np.sum(1.0 / groups.sigma2)))
        update["b"] = float(rng.gamma(shape, scale))

    if toggles.gamma:
        dish_counts = aux.considered_dish_counts()
        update["gamma"] = sample_concentration_escobar_west(
            int(np.count_nonzero(dish_counts)), int(dish_counts.sum()), hyper.a_gamma, hyper.b_gamma, hyper.gamma, rng
        )

    if toggles.alpha0:
        update["alpha0"] = sample_concentration_escobar_west(
            int(aux.m_init.sum()), counts.n, hyper.a_alpha0, hyper.b_alpha0, hyper.alpha0, rng
        )

    total = hyper.alpha + hyper.kappa
    if toggles.alpha_kappa:
        total = _sample_alpha_plus_kappa(hyper, counts, aux, rng)

    rho = hyper.rho
    if toggles.rho:
        overrides = aux.total_overrides()
        rho = float(rng.beta(overrides + hyper.a_rho, int(aux.m_trans.sum()) - overrides + hyper.b_rho))

    hyper = hyper.model_copy(update=update)
    if toggles.alpha_kappa or toggles.rho:
        hyper = hyper.with_concentrations((1.0 - rho) * total, rho * total)

    return hyper
