"""
Pydantic model of the sampler configuration.
"""

from typing import Dict, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from hdp_lpcm.model import HyperparamToggles


class SamplerConfig(BaseModel):
    """
    Iteration counts, proposal scales, model sizes and hyperparameter toggles of one chain.

    With `storage="summary"` the kept samples only carry their positions, labels, intercept and blending
    coefficient. Group centers, group variances and the transition structure are kept as running means over
    the kept sweeps, the hyperparameters as of the last kept sweep.
    """

    n_tune: int = Field(default=5000, ge=0)
    n_burn: int = Field(default=5000, ge=0)
    n_keep: int = Field(default=10000, ge=0)
    thin: int = Field(default=1, ge=1)
    step_x: float = Field(default=0.1, ge=0)
    step_beta0: float = Field(default=0.1, ge=0)
    target_accept_low: float = 0.25
    target_accept_high: float = 0.40
    tune_interval: int = Field(default=100, ge=1)
    seed: int = Field(default=42, ge=0, lt=2**64)
    L: int = Field(default=10, ge=1)
    p: int = Field(default=2, ge=1)
    n_init_sweeps: int = Field(default=1000, ge=0)
    init_lambda: float = Field(default=0.9, gt=0, lt=1)
    hyperparams: HyperparamToggles = Field(default_factory=HyperparamToggles)
    hyperparam_values: Dict[str, float] = Field(default_factory=dict)
    checkpoint_every: Optional[int] = Field(default=None, ge=1)
    storage: Literal["full", "summary"] = "full"
    progress: bool = False

    @model_validator(mode="after")
    def _validate_band(self) -> "SamplerConfig":
        if not 0 < self.target_accept_low < self.target_accept_high < 1:
            raise ValueError("Acceptance band must satisfy 0 < low < high < 1")
        return self

    @property
    def n_samples(self) -> int:
        """
        Number of kept samples after thinning.
        """
        return self.n_keep // self.thin

    @property
    def n_sweeps(self) -> int:
        return self.n_tune + self.n_burn + self.n_keep
