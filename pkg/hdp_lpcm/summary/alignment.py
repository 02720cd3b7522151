"""
Procrustes alignment of sampled latent spaces onto a reference layout.
"""

from typing import List, Tuple

import numpy as np

from hdp_lpcm.exceptions import DimensionError, EmptyChainError
from hdp_lpcm.model import LatentPositions, align_configuration
from hdp_lpcm.sampling import Chain


def align_positions(positions: LatentPositions, reference: LatentPositions) -> Tuple[LatentPositions, np.ndarray]:
    """
    Aligns one set of positions with a single rotation/reflection of its stacked `(T * n, p)` matrix.

    Returns:
        Tuple[LatentPositions, np.ndarray]: The aligned positions and the orthogonal matrix applied.
    """
    if positions.X.shape != reference.X.shape:
        raise DimensionError(f"positions of shape {positions.X.shape} and reference of shape {reference.X.shape}")

    aligned, rotation = align_configuration(positions.stacked(), reference.stacked())
    return LatentPositions(X=aligned.reshape(positions.X.shape)), rotation


def procrustes_align(chain: Chain, reference: LatentPositions) -> List[LatentPositions]:
    """
    Aligns the positions of every kept sample onto `reference`. The stacked positions of a sample are
    centered, rotated or reflected to minimize the Frobenius distance to the centered reference, and
    moved to the reference centroid. No scaling is applied.

    Args:
        chain (Chain): Chain whose samples are aligned.
        reference (LatentPositions): Reference layout of shape `(T, n, p)`.

    Raises:
        EmptyChainError: If the chain holds no samples.
        DimensionError: If the reference does not match the samples.

    Returns:
        List[LatentPositions]: Aligned positions, one per sample.
    """
    if len(chain.samples) == 0:
        raise EmptyChainError()

    return [align_positions(sample.positions, reference)[0] for sample in chain.samples]


def mean_aligned_positions(chain: Chain, reference: LatentPositions) -> LatentPositions:
    aligned = procrustes_align(chain, reference)
    return LatentPositions(X=np.mean([positions.X for positions in aligned], axis=0))
