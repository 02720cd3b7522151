"""
Sufficient statistics of the label sequences and the auxiliary counts of the Chinese restaurant
franchise representation.
"""

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from hdp_lpcm.exceptions import LabelError
from hdp_lpcm.model import LabelSequences
from hdp_lpcm.pydantic_utils import IntArray


class TransitionCounts(BaseModel):
    """
    `n_init[k]`: actors in group `k` at the first time. `n_trans[t - 1, j, k]`: actors moving from `j` at
    time `t - 1` to `k` at time `t`. `n_group[t, k]`: actors in group `k` at time `t`.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    n_init: IntArray
    n_trans: IntArray
    n_group: IntArray

    @property
    def n(self) -> int:
        return int(self.n_init.sum())

    @property
    def L(self) -> int:  # pylint: disable=invalid-name
        return int(self.n_init.shape[0])


class AuxCounts(BaseModel):
    """
    Table counts `m_init` (first-time restaurant) and `m_trans` (`(T - 1, L, L)`, restaurant `j` at time
    `t` ordering dish `k`), the overrides `w` (`(T - 1, L)`) and the considered counts `m_bar_*`, which are
    the table counts with the overrides removed from the diagonal.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    m_init: IntArray
    m_trans: IntArray
    w: Optional[IntArray] = None
    m_bar_init: Optional[IntArray] = None
    m_bar_trans: Optional[IntArray] = None

    def considered_dish_counts(self) -> np.ndarray:
        """
        `m_bar_{.k.}`: considered tables per dish summed over restaurants and times, including the
        first-time restaurant.
        """
        m_bar_init = self.m_init if self.m_bar_init is None else self.m_bar_init
        m_bar_trans = self.m_trans if self.m_bar_trans is None else self.m_bar_trans
        return m_bar_init + m_bar_trans.sum(axis=(0, 1))

    def total_overrides(self) -> int:
        return 0 if self.w is None else int(self.w.sum())


def compute_transition_counts(labels: LabelSequences, L: int) -> TransitionCounts:  # pylint: disable=invalid-name
    """
    Counts initial assignments, transitions and occupancies.

    Raises:
        LabelError: If a label is outside of `0..L-1`.
    """
    Z = labels.Z  # pylint: disable=invalid-name
    n_times = Z.shape[0]

    if Z.size > 0 and Z.max() >= L:
        raise LabelError(int(Z.max()), L)

    n_init = np.bincount(Z[0], minlength=L).astype(np.int64)
    n_trans = np.zeros((max(n_times - 1, 0), L, L), dtype=np.int64)
    for t in range(1, n_times):
        np.add.at(n_trans[t - 1], (Z[t - 1], Z[t]), 1)

    n_group = np.stack([np.bincount(row, minlength=L) for row in Z]).astype(np.int64)
    return TransitionCounts(n_init=n_init, n_trans=n_trans, n_group=n_group)
