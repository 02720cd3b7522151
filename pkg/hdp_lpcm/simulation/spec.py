"""
Configuration of the synthetic network generators and the two preset scenarios.
"""

from typing import List, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from hdp_lpcm.pydantic_utils import FloatArray

PRESET_LOCATIONS = [[-1.5, 0.0], [1.5, 0.0], [-3.0, 0.0], [3.0, 0.0], [0.0, -2.0], [0.0, 2.0]]


class SimSpec(BaseModel):
    """
    Sizes, group locations and parameters of a simulated dynamic network.

    `active_sets[t]` lists the groups (1-based) that actors may join at time `t`, `const_per_time[t]` is
    the self-transition constant of the transitions into time `t` (the first entry is unused). The group
    spreads are drawn from an inverse gamma with shape and scale `sigma_prior`, as standard deviations or
    as variances depending on `sigma_target`.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int = Field(default=120, ge=2)
    T: int = Field(default=6, ge=1)
    p: int = Field(default=2, ge=1)
    group_locations: FloatArray = Field(default_factory=lambda: np.array(PRESET_LOCATIONS))
    sigma_prior: List[float] = Field(default_factory=lambda: [6.0, 0.05], min_length=2, max_length=2)
    sigma_target: Literal["sd", "variance"] = "sd"
    lambda_: float = Field(default=0.8, gt=0, lt=1)
    beta0: float = 1.0
    const_per_time: List[float] = Field(default_factory=lambda: [20.0] * 6)
    active_sets: List[List[int]] = Field(default_factory=lambda: [list(range(1, 7))] * 6)
    pi0_concentration: float = Field(default=10.0, gt=0)
    max_retries: int = Field(default=10, ge=0)
    seed: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _validate_spec(self) -> "SimSpec":
        locations = self.group_locations
        if locations.ndim != 2 or locations.shape[1] != self.p:
            raise ValueError(f"Group locations must have shape (G, {self.p}), got {locations.shape}")
        if np.unique(locations, axis=0).shape[0] != locations.shape[0]:
            raise ValueError("Group locations must be distinct")
        if min(self.sigma_prior) <= 0:
            raise ValueError("Inverse-gamma shape and scale must be positive")

        if len(self.const_per_time) != self.T or min(self.const_per_time) <= 0:
            raise ValueError(f"Expected {self.T} positive self-transition constants")
        if len(self.active_sets) != self.T:
            raise ValueError(f"Expected {self.T} active sets, got {len(self.active_sets)}")
        for active in self.active_sets:
            if len(active) == 0:
                raise ValueError("Active sets must not be empty")
            if min(active) < 1 or max(active) > self.G:
                raise ValueError(f"Active groups must lie in 1..{self.G}, got {active}")

        return self

    @property
    def G(self) -> int:  # pylint: disable=invalid-name
        return int(self.group_locations.shape[0])

    def active(self, t: int) -> List[int]:
        """
        0-based active groups at time `t`.
        """
        return sorted({g - 1 for g in self.active_sets[t]})


def homogeneous_spec(**overrides) -> SimSpec:
    """
    Six groups shared by all six time points, strong self-transitions (constant 20).
    """
    values = {
        "n": 120,
        "T": 6,
        "const_per_time": [20.0] * 6,
        "active_sets": [list(range(1, 7))] * 6,
    }
    values.update(overrides)
    return SimSpec(**values)


def inhomogeneous_spec(**overrides) -> SimSpec:
    """
    Nine time points: groups 1 and 2 split into all six groups at time 4 and merge into groups 3 to 6
    at time 7. The constant drops to 1 at the split so actors spread evenly.
    """
    const = [20.0] * 9
    const[3] = 1.0
    values = {
        "n": 120,
        "T": 9,
        "const_per_time": const,
        "active_sets": [[1, 2]] * 3 + [list(range(1, 7))] * 3 + [[3, 4, 5, 6]] * 3,
    }
    values.update(overrides)
    return SimSpec(**values)


PRESETS = {"homogeneous": homogeneous_spec, "inhomogeneous": inhomogeneous_spec}
