"""
In-memory representation of a dynamic network.
"""

from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from hdp_lpcm.pydantic_utils import BinaryArray


class DynamicNetwork(BaseModel):
    """
    `T` symmetric binary adjacency matrices over a fixed set of `n` actors. The adjacency tensor has shape
    `(T, n, n)`, is read-only after construction and can be shared between chains.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    adjacency: BinaryArray
    actor_names: Optional[List[str]] = None
    time_labels: Optional[List[str]] = None

    @model_validator(mode="after")
    def _validate_adjacency(self) -> "DynamicNetwork":
        Y = self.adjacency

        if Y.ndim != 3 or Y.shape[1] != Y.shape[2]:
            raise ValueError(f"Adjacency must have shape (T, n, n), got {Y.shape}")
        if Y.shape[0] < 1 or Y.shape[1] < 1:
            raise ValueError("A dynamic network needs at least one time step and one actor")
        if not np.array_equal(Y, np.swapaxes(Y, 1, 2)):
            raise ValueError("Adjacency matrices must be symmetric")
        if np.any(np.diagonal(Y, axis1=1, axis2=2)):
            raise ValueError("Adjacency matrices must have a zero diagonal")
        if self.actor_names is not None and len(self.actor_names) != Y.shape[1]:
            raise ValueError(f"Expected {Y.shape[1]} actor names, got {len(self.actor_names)}")
        if self.time_labels is not None and len(self.time_labels) != Y.shape[0]:
            raise ValueError(f"Expected {Y.shape[0]} time labels, got {len(self.time_labels)}")

        Y.flags.writeable = False
        return self

    @property
    def n(self) -> int:
        return int(self.adjacency.shape[1])

    @property
    def T(self) -> int:  # pylint: disable=invalid-name
        return int(self.adjacency.shape[0])

    def dyads(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        Index arrays `(i, j)` of the undirected dyad set `{(i, j): j < i}`.
        """
        return np.tril_indices(self.n, k=-1)

    def dyad_values(self) -> np.ndarray:
        """
        Observed edge indicators with shape `(T, n * (n - 1) / 2)`, ordered like `dyads()`.
        """
        rows, cols = self.dyads()
        return self.adjacency[:, rows, cols]

    def density(self) -> np.ndarray:
        """
        Fraction of present edges per time step.
        """
        if self.n < 2:
            return np.zeros(self.T)

        return self.dyad_values().mean(axis=1)

    def degrees(self) -> np.ndarray:
        """
        Degree of every actor at every time step, shape `(T, n)`.
        """
        return self.adjacency.sum(axis=2, dtype=np.int64)
