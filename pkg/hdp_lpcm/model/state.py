"""
Domain types holding one full state of the model.

Group labels are stored 0-based (`0..L-1`) in memory. Tables written for people use 1-based labels.
Transition matrices are indexed by the time they lead into: `Pi[t - 1]` moves actors from time `t - 1`
to time `t` (0-based times), so `Pi` has `T - 1` entries.
"""

from typing import Any, Dict, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from hdp_lpcm.pydantic_utils import FloatArray, IntArray

SIMPLEX_TOLERANCE = 1e-10
RHO_TOLERANCE = 1e-12


class LatentPositions(BaseModel):
    """
    Latent coordinates of every actor at every time, shape `(T, n, p)`.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    X: FloatArray

    @model_validator(mode="after")
    def _validate_positions(self) -> "LatentPositions":
        if self.X.ndim != 3:
            raise ValueError(f"Positions must have shape (T, n, p), got {self.X.shape}")
        if not np.all(np.isfinite(self.X)):
            raise ValueError("Positions must be finite")
        return self

    @property
    def T(self) -> int:  # pylint: disable=invalid-name
        return int(self.X.shape[0])

    @property
    def n(self) -> int:
        return int(self.X.shape[1])

    @property
    def p(self) -> int:
        return int(self.X.shape[2])

    def stacked(self) -> np.ndarray:
        """
        Positions as a `(T * n, p)` matrix, time-major.
        """
        return self.X.reshape(-1, self.p)


class LabelSequences(BaseModel):
    """
    Group label of every actor at every time, shape `(T, n)`.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    Z: IntArray

    @model_validator(mode="after")
    def _validate_labels(self) -> "LabelSequences":
        if self.Z.ndim != 2:
            raise ValueError(f"Labels must have shape (T, n), got {self.Z.shape}")
        if self.Z.size > 0 and self.Z.min() < 0:
            raise ValueError("Labels must be nonnegative")
        return self

    def occupied(self, t: int) -> np.ndarray:
        return np.unique(self.Z[t])

    def n_occupied(self) -> np.ndarray:
        """
        Number of occupied groups `|G_t|` per time.
        """
        return np.array([np.unique(row).size for row in self.Z], dtype=np.int64)


class GroupParams(BaseModel):
    """
    Group centers `mu` (`L x p`), group variances `sigma2`, the blending coefficient `lambda_` and the
    intercept `beta0`.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    mu: FloatArray
    sigma2: FloatArray
    lambda_: float
    beta0: float

    @model_validator(mode="after")
    def _validate_groups(self) -> "GroupParams":
        if self.mu.ndim != 2 or self.sigma2.shape != (self.mu.shape[0],):
            raise ValueError(f"Inconsistent group shapes mu={self.mu.shape}, sigma2={self.sigma2.shape}")
        if not np.all(self.sigma2 > 0):
            raise ValueError("Group variances must be positive")
        if not 0 < self.lambda_ < 1:
            raise ValueError(f"Blending coefficient must lie in (0, 1), got {self.lambda_}")
        return self

    @property
    def L(self) -> int:  # pylint: disable=invalid-name
        return int(self.mu.shape[0])


class TransitionStructure(BaseModel):
    """
    Global weights `beta`, initial distribution `pi0` and the `T - 1` row-stochastic matrices `Pi`.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    beta: FloatArray
    pi0: FloatArray
    Pi: FloatArray

    @model_validator(mode="after")
    def _validate_simplices(self) -> "TransitionStructure":
        n_groups = self.beta.shape[0]

        if self.beta.ndim != 1 or self.pi0.shape != (n_groups,):
            raise ValueError(f"Inconsistent shapes beta={self.beta.shape}, pi0={self.pi0.shape}")
        if self.Pi.ndim != 3 or self.Pi.shape[1:] != (n_groups, n_groups):
            raise ValueError(f"Transition matrices must have shape (T - 1, L, L), got {self.Pi.shape}")

        for name, value in (("beta", self.beta), ("pi0", self.pi0), ("Pi", self.Pi)):
            if np.any(value < 0):
                raise ValueError(f"{name} has negative entries")
            if value.size > 0 and np.max(np.abs(value.sum(axis=-1) - 1.0)) > SIMPLEX_TOLERANCE:
                raise ValueError(f"{name} does not sum to one")

        return self

    @property
    def L(self) -> int:  # pylint: disable=invalid-name
        return int(self.beta.shape[0])


class Hyperparams(BaseModel):
    """
    Concentrations of the sticky HDP, prior parameters and the constants of their hyperpriors.

    Concentration hyperpriors are gamma distributions in shape/rate form. `b` has the prior
    `Gamma(c / 2, scale=2 / d)` and `tau2` has the prior `InvGamma(a_tau / 2, scale=b_tau / 2)`.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    gamma: float = Field(default=1.0, gt=0)
    alpha0: float = Field(default=1.0, gt=0)
    alpha: float = Field(default=1.0, gt=0)
    kappa: float = Field(default=4.0, ge=0)
    rho: float = Field(default=0.8, ge=0, lt=1)

    tau2: float = Field(default=1.0, gt=0)
    a: float = Field(default=2.0, gt=0)
    b: float = Field(default=4.0, gt=0)
    a_tau: float = Field(default=4.125, gt=0)
    b_tau: float = Field(default=2.125, gt=0)
    c: float = Field(default=0.125, gt=0)
    d: float = Field(default=0.03125, gt=0)

    mu_beta0: float = 0.0
    sigma2_beta0: float = Field(default=2.0, gt=0)
    mu_lambda: float = 0.9
    sigma2_lambda: float = Field(default=0.01, gt=0)
    mu0: Optional[FloatArray] = None

    a_gamma: float = Field(default=1.0, gt=0)
    b_gamma: float = Field(default=0.1, gt=0)
    a_alpha0: float = Field(default=1.0, gt=0)
    b_alpha0: float = Field(default=1.0, gt=0)
    a_alpha_kappa: float = Field(default=5.0, gt=0)
    b_alpha_kappa: float = Field(default=0.1, gt=0)
    a_rho: float = Field(default=8.0, gt=0)
    b_rho: float = Field(default=2.0, gt=0)

    @model_validator(mode="before")
    @classmethod
    def _fill_rho(cls, data: Any) -> Any:
        if isinstance(data, dict) and "rho" not in data:
            alpha = data.get("alpha", 1.0)
            kappa = data.get("kappa", 4.0)
            data = {**data, "rho": kappa / (alpha + kappa)}
        return data

    @model_validator(mode="after")
    def _validate_rho(self) -> "Hyperparams":
        if abs(self.rho - self.kappa / (self.alpha + self.kappa)) > RHO_TOLERANCE:
            raise ValueError(f"rho={self.rho} does not equal kappa / (alpha + kappa)")
        return self

    def prior_mean(self, p: int) -> np.ndarray:
        """
        Prior mean of the group centers, the zero vector unless `mu0` is set.
        """
        return np.zeros(p) if self.mu0 is None else np.asarray(self.mu0, dtype=np.float64)

    def with_concentrations(self, alpha: float, kappa: float) -> "Hyperparams":
        """
        Returns a copy with new `alpha` and `kappa` and the matching `rho`.
        """
        return self.model_copy(update={"alpha": alpha, "kappa": kappa, "rho": kappa / (alpha + kappa)})


class HyperparamToggles(BaseModel):
    """
    Which hyperparameters are resampled in every sweep. Disabling all of them gives the fixed
    hyperparameter mode.
    """

    tau2: bool = True
    b: bool = True
    gamma: bool = True
    alpha0: bool = True
    alpha_kappa: bool = True
    rho: bool = True

    @classmethod
    def fixed(cls) -> "HyperparamToggles":
        return cls(tau2=False, b=False, gamma=False, alpha0=False, alpha_kappa=False, rho=False)

    def enabled(self) -> Dict[str, bool]:
        return self.model_dump()


class ModelState(BaseModel):
    """
    One full state of the chain.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    positions: LatentPositions
    labels: LabelSequences
    trans: TransitionStructure
    groups: GroupParams
    hyper: Hyperparams

    @model_validator(mode="after")
    def _validate_dimensions(self) -> "ModelState":
        T, n, p = self.positions.X.shape  # pylint: disable=invalid-name
        L = self.groups.L  # pylint: disable=invalid-name

        if self.labels.Z.shape != (T, n):
            raise ValueError(f"Labels have shape {self.labels.Z.shape}, expected {(T, n)}")
        if self.labels.Z.size > 0 and self.labels.Z.max() >= L:
            raise ValueError(f"Labels must be smaller than L={L}")
        if self.groups.mu.shape[1] != p:
            raise ValueError(f"Group centers have dimension {self.groups.mu.shape[1]}, expected {p}")
        if self.trans.L != L or self.trans.Pi.shape[0] != T - 1:
            raise ValueError(f"Transition structure does not match T={T}, L={L}")
        if self.hyper.mu0 is not None and self.hyper.mu0.shape != (p,):
            raise ValueError(f"mu0 must have shape ({p},)")

        return self

    @property
    def T(self) -> int:  # pylint: disable=invalid-name
        return self.positions.T

    @property
    def n(self) -> int:
        return self.positions.n

    @property
    def p(self) -> int:
        return self.positions.p

    @property
    def L(self) -> int:  # pylint: disable=invalid-name
        return self.groups.L
