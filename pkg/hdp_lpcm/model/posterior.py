"""
Unnormalized log joint density of a model state and the observed networks.
"""

from typing import Optional

import numpy as np
from scipy import stats

from hdp_lpcm.model.densities import (
    dirichlet_logpdf,
    gamma_logpdf,
    inv_gamma_logpdf,
    isotropic_normal_logpdf,
    label_log_densities,
    truncated_normal_logpdf,
)
from hdp_lpcm.model.likelihood import network_log_likelihood
from hdp_lpcm.model.state import HyperparamToggles, ModelState
from hdp_lpcm.network import DynamicNetwork


def log_prior(state: ModelState, hyperpriors: Optional[HyperparamToggles] = None) -> float:
    """
    Log-prior of the transition structure, the group parameters, the intercept and the blending
    coefficient. Hyperpriors are added for every hyperparameter enabled in `hyperpriors`.
    """
    hyper, trans, groups = state.hyper, state.trans, state.groups
    L = state.L  # pylint: disable=invalid-name

    total = float(dirichlet_logpdf(trans.beta, np.full(L, hyper.gamma / L)))
    total += float(dirichlet_logpdf(trans.pi0, hyper.alpha0 * trans.beta))

    if trans.Pi.shape[0] > 0:
        row_alpha = hyper.alpha * trans.beta[None, :] + hyper.kappa * np.eye(L)
        total += float(np.sum(dirichlet_logpdf(trans.Pi, row_alpha[None, :, :])))

    total += float(np.sum(isotropic_normal_logpdf(groups.mu, hyper.prior_mean(state.p)[None, :], hyper.tau2)))
    total += inv_gamma_logpdf(groups.sigma2, hyper.a / 2.0, hyper.b / 2.0)
    total += float(stats.norm.logpdf(groups.beta0, hyper.mu_beta0, np.sqrt(hyper.sigma2_beta0)))
    total += truncated_normal_logpdf(groups.lambda_, hyper.mu_lambda, hyper.sigma2_lambda)

    if hyperpriors is not None:
        if hyperpriors.tau2:
            total += inv_gamma_logpdf(hyper.tau2, hyper.a_tau / 2.0, hyper.b_tau / 2.0)
        if hyperpriors.b:
            total += float(stats.gamma.logpdf(hyper.b, hyper.c / 2.0, scale=2.0 / hyper.d))
        if hyperpriors.gamma:
            total += gamma_logpdf(hyper.gamma, hyper.a_gamma, hyper.b_gamma)
        if hyperpriors.alpha0:
            total += gamma_logpdf(hyper.alpha0, hyper.a_alpha0, hyper.b_alpha0)
        if hyperpriors.alpha_kappa:
            total += gamma_logpdf(hyper.alpha + hyper.kappa, hyper.a_alpha_kappa, hyper.b_alpha_kappa)
        if hyperpriors.rho:
            total += float(stats.beta.logpdf(hyper.rho, hyper.a_rho, hyper.b_rho))

    return total


def log_posterior(state: ModelState, net: DynamicNetwork, hyperpriors: Optional[HyperparamToggles] = None) -> float:
    """
    Unnormalized log posterior: network log-likelihood, the trajectory log-density of every actor and
    the log-priors.

    Args:
        state (ModelState): State to evaluate.
        net (DynamicNetwork): Observed networks.
        hyperpriors (HyperparamToggles, optional): Hyperparameters whose hyperprior is included, usually
            the ones the sampler resamples. Defaults to None (no hyperpriors).

    Returns:
        float: The log posterior up to a constant, `-inf` for zero-probability states.
    """
    loglik = network_log_likelihood(net, state.positions, state.groups.beta0)
    trajectories = float(np.sum(label_log_densities(state.positions.X, state.labels.Z, state.trans, state.groups)))

    return loglik + trajectories + log_prior(state, hyperpriors)
