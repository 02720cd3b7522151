"""
Blocked Metropolis-Hastings within Gibbs sampler and the chain driver.
"""

import os
from typing import Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from hdp_lpcm.exceptions import InitializationError
from hdp_lpcm.logger import logger
from hdp_lpcm.model import HyperparamToggles, LabelSequences, ModelState, TransitionStructure, distance_tensor, log_posterior
from hdp_lpcm.network import DynamicNetwork
from hdp_lpcm.sampling.auxiliary import (
    sample_aux_tables,
    sample_beta,
    sample_initial_distribution,
    sample_overrides,
    sample_transition_rows,
)
from hdp_lpcm.sampling.chain import BLOCKS, PHASES, AcceptanceStats, Chain, GroupParamMeans, RngProvenance
from hdp_lpcm.sampling.conditionals import sample_group_means, sample_group_variances, sample_lambda
from hdp_lpcm.sampling.config import SamplerConfig
from hdp_lpcm.sampling.counts import compute_transition_counts
from hdp_lpcm.sampling.hyperparams import sample_hyperparams
from hdp_lpcm.sampling.initialization import initialize_state
from hdp_lpcm.sampling.labels import sample_label_sequences
from hdp_lpcm.sampling.metropolis import mh_update_intercept, mh_update_positions, tune_step_sizes
from hdp_lpcm.sampling.persistence import EngineCheckpoint, load_checkpoint, save_checkpoint
from hdp_lpcm.sampling.random import make_rng, rng_from_state, rng_state


def gibbs_sweep(
    state: ModelState,
    net: DynamicNetwork,
    steps: Dict[str, float],
    rng: np.random.Generator,
    toggles: Optional[HyperparamToggles] = None,
    likelihood_weight: float = 1.0,
) -> Tuple[ModelState, Dict[str, float]]:
    """
    One full sweep: positions, intercept, label sequences, table and override counts, global weights,
    initial distribution, transition rows, group centers, group variances, blending coefficient and the
    enabled hyperparameters, in this order. The state is updated in place.

    Args:
        state (ModelState): Current state.
        net (DynamicNetwork): Observed networks.
        steps (Dict[str, float]): Proposal scales of the `positions` and `intercept` blocks.
        rng (np.random.Generator): Random generator.
        toggles (HyperparamToggles, optional): Resampled hyperparameters. Defaults to all.
        likelihood_weight (float): Multiplier of the network likelihood, 0 targets the prior.

    Returns:
        Tuple[ModelState, Dict[str, float]]: The state and the acceptance rate of both MH blocks.
    """
    state, accepted_positions = mh_update_positions(state, net, steps["positions"], rng, likelihood_weight)
    distances = distance_tensor(state.positions.X) if likelihood_weight != 0.0 else None
    state, accepted_intercept = mh_update_intercept(
        state, net, steps["intercept"], rng, likelihood_weight=likelihood_weight, distances=distances
    )

    state.labels = LabelSequences(Z=sample_label_sequences(state.positions.X, state.trans, state.groups, rng))
    counts = compute_transition_counts(state.labels, state.L)

    hyper = state.hyper
    aux = sample_aux_tables(counts, state.trans.beta, hyper.alpha0, hyper.alpha, hyper.kappa, rng)
    aux = sample_overrides(aux, state.trans.beta, hyper.rho, rng)

    beta = sample_beta(aux, hyper.gamma, rng)
    pi0 = sample_initial_distribution(counts, beta, hyper.alpha0, rng)
    Pi = sample_transition_rows(counts, beta, hyper.alpha, hyper.kappa, rng)  # pylint: disable=invalid-name
    state.trans = TransitionStructure(beta=beta, pi0=pi0, Pi=Pi)

    state.groups.mu = sample_group_means(state, counts, rng)
    state.groups.sigma2 = sample_group_variances(state, counts, rng)
    state.groups.lambda_ = sample_lambda(state, rng)
    state.hyper = sample_hyperparams(state, counts, aux, rng, toggles)

    return state, {"positions": float(accepted_positions.mean()), "intercept": float(accepted_intercept)}


def _phase(sweep: int, config: SamplerConfig) -> str:
    if sweep < config.n_tune:
        return "tune"
    if sweep < config.n_tune + config.n_burn:
        return "burn"
    return "keep"


def _snapshot(state: ModelState) -> ModelState:
    return state.model_copy(deep=True)


class _EngineRun:
    """
    Mutable bookkeeping of a running chain.
    """

    def __init__(self, net: DynamicNetwork, config: SamplerConfig) -> None:
        self.net = net
        self.config = config
        self.sweep = 0
        self.state: Optional[ModelState] = None
        self.rng: Optional[np.random.Generator] = None
        self.steps = {"positions": config.step_x, "intercept": config.step_beta0}
        self.window: Dict[str, List[float]] = {block: [] for block in BLOCKS}
        self.accept_stats = {phase: AcceptanceStats() for phase in PHASES}
        self.samples: List[ModelState] = []
        self.log_post: List[float] = []
        self.group_means: Optional[GroupParamMeans] = None

    def start(self) -> None:
        self.rng = make_rng(self.config.seed)
        self.state = initialize_state(self.net, self.config, self.rng)

        value = log_posterior(self.state, self.net, self.config.hyperparams)
        if not np.isfinite(value):
            raise InitializationError(value)
        logger.info("Initial log posterior %.4f", value)

    def restore(self, checkpoint: EngineCheckpoint) -> None:
        logger.info("Resuming from sweep %d", checkpoint.sweep)
        self.sweep = checkpoint.sweep
        self.state = checkpoint.state
        self.rng = rng_from_state(checkpoint.rng_state)
        self.steps = dict(checkpoint.step_sizes)
        self.window = {block: list(checkpoint.window.get(block, [])) for block in BLOCKS}
        self.accept_stats = dict(checkpoint.accept_stats)
        self.samples = list(checkpoint.samples)
        self.log_post = list(checkpoint.log_post)
        self.group_means = checkpoint.group_means

    def checkpoint(self) -> EngineCheckpoint:
        return EngineCheckpoint(
            sweep=self.sweep,
            state=self.state,
            rng_state=rng_state(self.rng),
            step_sizes=self.steps,
            window=self.window,
            accept_stats=self.accept_stats,
            samples=self.samples,
            log_post=self.log_post,
            group_means=self.group_means,
            config=self.config,
        )

    def step(self) -> None:
        config = self.config
        phase = _phase(self.sweep, config)

        self.state, rates = gibbs_sweep(self.state, self.net, self.steps, self.rng, config.hyperparams)
        self.accept_stats[phase].record("positions", rates["positions"] * self.net.T * self.net.n, self.net.T * self.net.n)
        self.accept_stats[phase].record("intercept", rates["intercept"], 1)

        if phase == "tune":
            for block in BLOCKS:
                self.window[block].append(rates[block])
            if (self.sweep + 1) % config.tune_interval == 0:
                self.steps = tune_step_sizes(self.window, self.steps, config.target_accept_low, config.target_accept_high)
                logger.debug("Sweep %d: acceptance %s, steps %s", self.sweep + 1, self._window_rates(), self.steps)
                self.window = {block: [] for block in BLOCKS}
        elif phase == "keep":
            kept_index = self.sweep - config.n_tune - config.n_burn
            if (kept_index + 1) % config.thin == 0:
                self.samples.append(_snapshot(self.state))
                self.log_post.append(log_posterior(self.state, self.net, config.hyperparams))
                if self.group_means is None:
                    self.group_means = GroupParamMeans.from_state(self.state)
                else:
                    self.group_means.update(self.state)

        self.sweep += 1

    def _window_rates(self) -> Dict[str, float]:
        return {block: float(np.mean(values)) if values else float("nan") for block, values in self.window.items()}

    def chain(self, interrupted: bool) -> Chain:
        samples = self.samples
        if self.config.storage == "summary" and self.group_means is not None:
            samples = [
                self.group_means.expand(s.positions.X, s.labels.Z, s.groups.beta0, s.groups.lambda_) for s in samples
            ]

        return Chain(
            samples=samples,
            log_post=self.log_post,
            accept_stats=self.accept_stats,
            config=self.config,
            rng_provenance=RngProvenance(seed=self.config.seed),
            step_sizes=self.steps,
            n=self.net.n,
            T=self.net.T,
            interrupted=interrupted,
            group_means=self.group_means,
        )


def run_chain(
    net: DynamicNetwork,
    config: SamplerConfig,
    checkpoint_path: Optional[str] = None,
    resume: bool = False,
) -> Chain:
    """
    Runs one chain through its tuning, burn-in and sampling phases. Step sizes adapt every
    `tune_interval` sweeps during tuning and stay fixed afterwards. Every `thin`-th sweep of the sampling
    phase is kept together with its log posterior.

    A keyboard interrupt stops the run after the current sweep and returns the samples kept so far with
    `interrupted` set.

    Args:
        net (DynamicNetwork): Observed networks.
        config (SamplerConfig): Sampler configuration.
        checkpoint_path (str, optional): Where to write checkpoints every `config.checkpoint_every` sweeps.
        resume (bool): Continue from `checkpoint_path` if it exists. Defaults to False.

    Raises:
        InitializationError: If the initial state has a non-finite log posterior.

    Returns:
        Chain: The chain.
    """
    run = _EngineRun(net, config)

    if resume and checkpoint_path is not None and os.path.isfile(checkpoint_path):
        run.restore(load_checkpoint(checkpoint_path))
    else:
        run.start()

    logger.info(
        "Running %d tuning, %d burn-in and %d sampling sweeps (thin=%d)",
        config.n_tune,
        config.n_burn,
        config.n_keep,
        config.thin,
    )
    progress = tqdm(total=config.n_sweeps, initial=run.sweep, disable=not config.progress, desc=f"chain {config.seed}")
    interrupted = False

    try:
        while run.sweep < config.n_sweeps:
            run.step()
            progress.update(1)

            if checkpoint_path is not None and config.checkpoint_every and run.sweep % config.checkpoint_every == 0:
                save_checkpoint(run.checkpoint(), checkpoint_path)
    except KeyboardInterrupt:
        logger.warning("Interrupted after %d sweeps, returning %d kept samples", run.sweep, len(run.samples))
        interrupted = True
    finally:
        progress.close()

    logger.info("Chain finished with acceptance %s", {phase: stats.rates() for phase, stats in run.accept_stats.items()})
    return run.chain(interrupted)
