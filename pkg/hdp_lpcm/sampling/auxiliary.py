"""
Auxiliary-variable updates of the sticky HDP under the weak-limit approximation: table counts,
override counts, the global weights, the initial distribution and the transition rows.
"""

import numpy as np

from hdp_lpcm.sampling.counts import AuxCounts, TransitionCounts
from hdp_lpcm.sampling.random import sample_dirichlet


def _count_tables(n_customers: int, concentration: float, rng: np.random.Generator) -> int:
    # customer i (0-based) opens a new table with probability c / (i + c)
    if n_customers == 0:
        return 0

    customers = np.arange(n_customers)
    return int(np.sum(rng.random(n_customers) < concentration / (customers + concentration)))


def sample_aux_tables(
    counts: TransitionCounts, beta: np.ndarray, alpha0: float, alpha: float, kappa: float, rng: np.random.Generator
) -> AuxCounts:
    """
    Samples the number of tables serving each dish. The first-time restaurant uses the concentration
    `alpha0 * beta[k]`, restaurant `j` at a later time uses `alpha * beta[k] + kappa * (j == k)`. Cells are
    visited in C order and only occupied cells consume random numbers.

    Returns:
        AuxCounts: Table counts only, overrides are added by `sample_overrides`.
    """
    m_init = np.zeros_like(counts.n_init)
    for k in np.flatnonzero(counts.n_init):
        m_init[k] = _count_tables(int(counts.n_init[k]), alpha0 * beta[k], rng)

    m_trans = np.zeros_like(counts.n_trans)
    for t, j, k in zip(*np.nonzero(counts.n_trans)):
        concentration = alpha * beta[k] + (kappa if j == k else 0.0)
        m_trans[t, j, k] = _count_tables(int(counts.n_trans[t, j, k]), concentration, rng)

    return AuxCounts(m_init=m_init, m_trans=m_trans)


def sample_overrides(aux: AuxCounts, beta: np.ndarray, rho: float, rng: np.random.Generator) -> AuxCounts:
    """
    Samples how many of the diagonal tables `m_trans[t, j, j]` were created by the self-transition
    override, with success probability `rho / (rho + beta[j] * (1 - rho))`. The first-time restaurant is
    never overridden.

    Returns:
        AuxCounts: Copy of `aux` with `w`, `m_bar_init` and `m_bar_trans` filled in.
    """
    if rho == 0:
        success = np.zeros_like(beta)
    else:
        success = rho / (rho + beta * (1.0 - rho))

    diagonal = np.diagonal(aux.m_trans, axis1=1, axis2=2)
    w = rng.binomial(diagonal, np.broadcast_to(success, diagonal.shape)).astype(np.int64)

    m_bar_trans = aux.m_trans.copy()
    n_groups = beta.shape[0]
    m_bar_trans[:, np.arange(n_groups), np.arange(n_groups)] -= w

    return AuxCounts(
        m_init=aux.m_init, m_trans=aux.m_trans, w=w, m_bar_init=aux.m_init.copy(), m_bar_trans=m_bar_trans
    )


def sample_beta(aux: AuxCounts, gamma: float, rng: np.random.Generator) -> np.ndarray:
    """
    Global weights `beta ~ Dirichlet(gamma / L + m_bar_{.k.})`.
    """
    dish_counts = aux.considered_dish_counts()
    return sample_dirichlet(gamma / dish_counts.shape[0] + dish_counts, rng)


def sample_initial_distribution(
    counts: TransitionCounts, beta: np.ndarray, alpha0: float, rng: np.random.Generator
) -> np.ndarray:
    """
    Initial distribution `pi0 ~ Dirichlet(alpha0 * beta + n_init)`.
    """
    return sample_dirichlet(alpha0 * beta + counts.n_init, rng)


def sample_transition_rows(
    counts: TransitionCounts, beta: np.ndarray, alpha: float, kappa: float, rng: np.random.Generator
) -> np.ndarray:
    """
    Transition rows `Pi[t - 1, k] ~ Dirichlet(alpha * beta + kappa * e_k + n_trans[t - 1, k])`,
    independently for every time and row. Rows without customers are prior draws.

    Returns:
        np.ndarray: Array of shape `(T - 1, L, L)`.
    """
    n_groups = beta.shape[0]
    prior = alpha * beta[None, :] + kappa * np.eye(n_groups)
    return sample_dirichlet(prior[None, :, :] + counts.n_trans, rng)
