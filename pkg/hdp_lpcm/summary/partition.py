"""
Posterior co-assignment probabilities and selection of a representative partition among the sampled ones.
"""

from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from hdp_lpcm.exceptions import EmptyChainError
from hdp_lpcm.model import LabelSequences, LatentPositions, network_log_likelihood
from hdp_lpcm.network import DynamicNetwork
from hdp_lpcm.pydantic_utils import FloatArray
from hdp_lpcm.sampling import Chain


class PartitionSummary(BaseModel):
    """
    Co-assignment probabilities (`T x n x n`), the selected partition with the index of the sample it came
    from, the positions of that sample (the reference layout for alignment), and the posterior of the
    number of occupied groups per time (`T x (L + 1)`).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    coassign: FloatArray
    selected: LabelSequences
    selected_sample_index: int
    aligned_positions: LatentPositions
    group_count_posterior: FloatArray
    objective: FloatArray


def _label_stack(chain: Chain) -> np.ndarray:
    if len(chain.samples) == 0:
        raise EmptyChainError()
    return np.stack([sample.labels.Z for sample in chain.samples])


def coassignment_probabilities(chain: Chain) -> np.ndarray:
    """
    Fraction of kept samples in which actors `i` and `j` share a group at time `t`.

    Raises:
        EmptyChainError: If the chain holds no samples.

    Returns:
        np.ndarray: Array of shape `(T, n, n)`, symmetric with unit diagonal.
    """
    labels = _label_stack(chain)
    together = labels[:, :, :, None] == labels[:, :, None, :]
    return together.mean(axis=0)


def partition_objective(Z: np.ndarray, coassign: np.ndarray) -> float:  # pylint: disable=invalid-name
    """
    Lower bound of the posterior expected variation of information of a candidate partition `Z` (`T x n`),
    summed over time:

    `sum_t sum_i log(#{j: Z_t^j = Z_t^i}) - 2 sum_t sum_i log(sum_j p_t(i, j) 1{Z_t^j = Z_t^i})`.
    """
    same = Z[:, :, None] == Z[:, None, :]
    sizes = same.sum(axis=2)
    mass = np.sum(coassign * same, axis=2)
    return float(np.sum(np.log(sizes)) - 2.0 * np.sum(np.log(mass)))


def select_partition(chain: Chain, net: Optional[DynamicNetwork] = None) -> Tuple[LabelSequences, int, np.ndarray]:
    """
    Picks the sampled partition that minimizes `partition_objective`. Ties are broken by the highest
    network log-likelihood if `net` is given, by the first sample otherwise.

    Raises:
        EmptyChainError: If the chain holds no samples.

    Returns:
        Tuple[LabelSequences, int, np.ndarray]: The selected labels, the index of their sample and the
            objective of every sample.
    """
    coassign = coassignment_probabilities(chain)
    objective = np.array([partition_objective(sample.labels.Z, coassign) for sample in chain.samples])

    candidates = np.flatnonzero(np.isclose(objective, objective.min(), rtol=0.0, atol=1e-10))
    index = int(candidates[0])

    if net is not None and candidates.size > 1:
        loglik: List[float] = [
            network_log_likelihood(net, chain.samples[k].positions, chain.samples[k].groups.beta0) for k in candidates
        ]
        index = int(candidates[int(np.argmax(loglik))])

    return LabelSequences(Z=chain.samples[index].labels.Z.copy()), index, objective


def group_count_posterior(chain: Chain) -> np.ndarray:
    """
    Posterior probability of each number `0..L` of occupied groups per time, shape `(T, L + 1)`.
    """
    labels = _label_stack(chain)
    n_groups = chain.samples[0].L
    occupied = np.array([[np.unique(row).size for row in Z] for Z in labels])

    table = np.zeros((labels.shape[1], n_groups + 1))
    for t in range(labels.shape[1]):
        table[t] = np.bincount(occupied[:, t], minlength=n_groups + 1)[: n_groups + 1]
    return table / labels.shape[0]


def summarize_partition(chain: Chain, net: Optional[DynamicNetwork] = None) -> PartitionSummary:
    """
    Co-assignments, selected partition, its reference layout and the group count posterior of a chain.
    """
    coassign = coassignment_probabilities(chain)
    selected, index, objective = select_partition(chain, net)

    return PartitionSummary(
        coassign=coassign,
        selected=selected,
        selected_sample_index=index,
        aligned_positions=LatentPositions(X=chain.samples[index].positions.X.copy()),
        group_count_posterior=group_count_posterior(chain),
        objective=objective,
    )
