"""
Result type of one Markov chain.
"""

from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from hdp_lpcm.model import (
    GroupParams,
    Hyperparams,
    LabelSequences,
    LatentPositions,
    ModelState,
    TransitionStructure,
)
from hdp_lpcm.pydantic_utils import FloatArray
from hdp_lpcm.sampling.config import SamplerConfig
from hdp_lpcm.sampling.random import RNG_ALGORITHM

CHAIN_FORMAT_VERSION = 2
PHASES = ("tune", "burn", "keep")
BLOCKS = ("positions", "intercept")


class RngProvenance(BaseModel):
    """
    Seed and bit generator a chain was drawn with.
    """

    seed: int
    algorithm: str = RNG_ALGORITHM


class AcceptanceStats(BaseModel):
    """
    Running acceptance counts of the Metropolis-Hastings blocks in one phase.
    """

    accepted: Dict[str, float] = Field(default_factory=lambda: {block: 0.0 for block in BLOCKS})
    proposed: Dict[str, float] = Field(default_factory=lambda: {block: 0.0 for block in BLOCKS})

    def record(self, block: str, accepted: float, proposed: float) -> None:
        self.accepted[block] = self.accepted.get(block, 0.0) + accepted
        self.proposed[block] = self.proposed.get(block, 0.0) + proposed

    def rates(self) -> Dict[str, float]:
        return {
            block: (self.accepted[block] / self.proposed[block] if self.proposed.get(block) else float("nan"))
            for block in self.accepted
        }


class GroupParamMeans(BaseModel):
    """
    Running means of the group parameters and the transition structure over the kept samples, together
    with the hyperparameters of the last kept sample.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    n_samples: int = Field(ge=1)
    mu: FloatArray
    sigma2: FloatArray
    lambda_: float
    beta0: float
    beta: FloatArray
    pi0: FloatArray
    Pi: FloatArray
    hyper: Hyperparams

    @classmethod
    def from_state(cls, state: ModelState) -> "GroupParamMeans":
        return cls(
            n_samples=1,
            mu=state.groups.mu.copy(),
            sigma2=state.groups.sigma2.copy(),
            lambda_=state.groups.lambda_,
            beta0=state.groups.beta0,
            beta=state.trans.beta.copy(),
            pi0=state.trans.pi0.copy(),
            Pi=state.trans.Pi.copy(),
            hyper=state.hyper.model_copy(deep=True),
        )

    def update(self, state: ModelState) -> None:
        """
        Adds one kept sample to the means.
        """
        self.n_samples += 1
        weight = 1.0 / self.n_samples

        self.mu = self.mu + weight * (state.groups.mu - self.mu)
        self.sigma2 = self.sigma2 + weight * (state.groups.sigma2 - self.sigma2)
        self.lambda_ += weight * (state.groups.lambda_ - self.lambda_)
        self.beta0 += weight * (state.groups.beta0 - self.beta0)
        self.beta = self.beta + weight * (state.trans.beta - self.beta)
        self.pi0 = self.pi0 + weight * (state.trans.pi0 - self.pi0)
        self.Pi = self.Pi + weight * (state.trans.Pi - self.Pi)
        self.hyper = state.hyper.model_copy(deep=True)

    def expand(self, X: np.ndarray, Z: np.ndarray, beta0: float, lambda_: float) -> ModelState:  # pylint: disable=invalid-name
        """
        Builds the state of a summary sample from its own positions, labels, intercept and blending
        coefficient and the means of everything else.
        """
        return ModelState(
            positions=LatentPositions(X=X),
            labels=LabelSequences(Z=Z),
            trans=TransitionStructure(
                beta=self.beta / self.beta.sum(),
                pi0=self.pi0 / self.pi0.sum(),
                Pi=self.Pi / self.Pi.sum(axis=-1, keepdims=True),
            ),
            groups=GroupParams(mu=self.mu.copy(), sigma2=self.sigma2.copy(), lambda_=lambda_, beta0=beta0),
            hyper=self.hyper.model_copy(deep=True),
        )


class Chain(BaseModel):
    """
    Kept (thinned) samples of one chain with their log posteriors and the run metadata.

    `group_means` holds the running means over the kept samples. Under summary storage the group
    parameters, transition structure and hyperparameters of every sample are these means.
    """

    samples: List[ModelState] = Field(default_factory=list)
    log_post: List[float] = Field(default_factory=list)
    accept_stats: Dict[str, AcceptanceStats] = Field(default_factory=lambda: {phase: AcceptanceStats() for phase in PHASES})
    config: SamplerConfig
    rng_provenance: RngProvenance
    step_sizes: Dict[str, float] = Field(default_factory=dict)
    n: int = 0
    T: int = 0
    interrupted: bool = False
    group_means: Optional[GroupParamMeans] = None
    format_version: int = CHAIN_FORMAT_VERSION

    @model_validator(mode="after")
    def _validate_samples(self) -> "Chain":
        if len(self.samples) != len(self.log_post):
            raise ValueError(f"{len(self.samples)} samples but {len(self.log_post)} log posterior values")
        if not self.interrupted and len(self.samples) != self.config.n_samples:
            raise ValueError(f"Expected {self.config.n_samples} samples, got {len(self.samples)}")
        if not all(np.isfinite(value) for value in self.log_post):
            raise ValueError("Log posterior of a kept sample is not finite")
        if self.config.storage == "summary" and self.samples:
            if self.group_means is None or self.group_means.n_samples != len(self.samples):
                raise ValueError("Summary storage needs the means of every kept sample")
        return self

    def acceptance_rates(self) -> Dict[str, Dict[str, float]]:
        """
        Acceptance rate of every block per phase, `nan` for phases that did not run.
        """
        return {phase: stats.rates() for phase, stats in self.accept_stats.items()}

    def trace(self, name: str) -> np.ndarray:
        """
        Trace of a scalar quantity over the kept samples: `log_post`, `beta0`, `lambda` or any
        hyperparameter field.
        """
        if name == "log_post":
            return np.asarray(self.log_post, dtype=np.float64)
        if name == "beta0":
            return np.array([sample.groups.beta0 for sample in self.samples], dtype=np.float64)
        if name == "lambda":
            return np.array([sample.groups.lambda_ for sample in self.samples], dtype=np.float64)
        return np.array([float(getattr(sample.hyper, name)) for sample in self.samples], dtype=np.float64)
